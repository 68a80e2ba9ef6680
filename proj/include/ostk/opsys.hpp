#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ostk/matcore.hpp"

namespace ostk {

enum class SystemKind { Concrete, Dual, Quotient, Coproduct, TensorMin, TensorMax, OminK, OmaxK };
const char* to_string(SystemKind k);

/// How a tensor system answers cone queries.
enum class TensorClass { None, ExactSpatial, ExactDualSdp, Hierarchy };
const char* to_string(TensorClass c);

struct OperatorSystem;
using SystemPtr = std::shared_ptr<const OperatorSystem>;

/// Finite-dimensional operator system. Every basis is self-adjoint, so the
/// involution acts on coefficient vectors by complex conjugation.
struct OperatorSystem {
  std::string name;
  SystemKind kind = SystemKind::Concrete;
  std::size_t dim = 0;
  CVector unit;
  /// Values of the designated faithful state on the basis.
  RVector faithful_state;

  /// Spatial realization (concrete systems and spatial tensor products);
  /// empty when the system has none.
  std::size_t ambient_dim = 0;
  std::vector<CMatrix> basis;
  /// Inverse Gram matrix of the realized basis.
  RMatrix gram_inv;
  double gram_condition = 1.0;

  std::vector<SystemPtr> parents;

  /// Quotients: kernel generators and coset representatives as columns of
  /// parent coordinates; quot_coords maps parent coordinates to quotient ones.
  RMatrix kernel;
  RMatrix reps;
  RMatrix quot_coords;
  /// Quotients of realized parents: density of the faithful state (vanishes on the kernel).
  CMatrix state_density;

  std::size_t k = 0;
  TensorClass tensor_class = TensorClass::None;
  std::string provenance;
  std::vector<std::string> warnings;

  bool realized() const { return !basis.empty(); }
};

/// Element of M_n(S): n*n coefficient vectors, row-major.
struct LevelElement {
  SystemPtr system;
  std::size_t level = 1;
  std::vector<CVector> coeffs;

  const CVector& at(std::size_t i, std::size_t j) const { return coeffs[i * level + j]; }
  CVector& at(std::size_t i, std::size_t j) { return coeffs[i * level + j]; }
};

LevelElement zero_element(const SystemPtr& s, std::size_t n);
/// e_n = I_n (x) e.
LevelElement unit_element(const SystemPtr& s, std::size_t n);
/// Level-1 element from a coefficient vector.
LevelElement level1(const SystemPtr& s, const CVector& c);
LevelElement adjoint(const LevelElement& u);
double hermitian_defect(const LevelElement& u);
LevelElement add(const LevelElement& a, const LevelElement& b, cplx sb = 1.0);
LevelElement scale(const LevelElement& a, cplx s);
/// [[alpha e, u], [u*, alpha e]] at level 2n.
LevelElement norm_block(const LevelElement& u, double alpha);
/// Bilinear pairing sum_ab sum_i u_abi f_abi between M_n(S) and M_n(S^d).
cplx pairing(const LevelElement& u, const LevelElement& f);
void check_element(const LevelElement& u);

/// Validated concrete system. The identity is prepended when absent.
SystemPtr make_concrete(const std::string& name, std::size_t ambient_dim, std::vector<CMatrix> basis,
                        std::optional<RVector> faithful_state = std::nullopt);

/// Gram data for a realized basis; throws on a dependent basis.
void finalize_realized(OperatorSystem& s);

/// Sum_ab E_ab (x) sum_i c_abi b_i for realized systems.
CMatrix realize(const LevelElement& u);
CMatrix realize(const OperatorSystem& s, const CVector& c);

/// Coordinates of a matrix in the realized basis, with the relative residual of
/// the least-squares fit (nonzero when the matrix is outside the span).
struct Coordinates {
  CVector coeffs;
  double residual;
};
Coordinates coordinates(const OperatorSystem& s, const CMatrix& m);
LevelElement element_from_realized(const SystemPtr& s, std::size_t n, const CMatrix& m);

/// Hermitian matrices whose real span is M_n(S)_h, for a realized S.
std::vector<CMatrix> level_herm_basis(const OperatorSystem& s, std::size_t n);
/// HS-dual basis: tr(dual_i b_j) = delta_ij.
std::vector<CMatrix> hs_dual_basis(const OperatorSystem& s);

// ---------------------------------------------------------------- verdicts

enum class Answer { Member, NotMember, Undecided };
const char* to_string(Answer a);

enum class CertKind { None, EigenWitness, SdpWitness, SeparatingFunctional, Decomposition, HierarchyLevel };
const char* to_string(CertKind k);

struct DecompositionBlock {
  CMatrix a;
  LevelElement p;
  LevelElement q;
};

struct Certificate {
  CertKind kind = CertKind::None;
  double value = 0.0;
  CVector vector;
  std::vector<CMatrix> matrices;
  /// Coefficients of a separating functional at the query level (row-major).
  std::vector<CVector> functional;
  std::vector<DecompositionBlock> blocks;
  double slack = 0.0;
  int level = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct ConeVerdict {
  Answer answer = Answer::Undecided;
  Certificate cert;
  double tol = 1e-8;
  std::string route;
};

struct ConeOptions {
  double tol = 1e-8;
  int hier_level = 2;
  int budget = 8;
  std::uint64_t seed = 1;
  bool force_hierarchy = false;
};

ConeVerdict undecided(const std::string& route, double tol, const std::string& why);

/// Spatial test for realized systems: MEMBER iff min_eig(realize(u)) >= -tol.
ConeVerdict spatial_cone_member(const LevelElement& u, double tol);

struct NormResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

/// Canonical norm: operator norm for realized systems, otherwise bisection on
/// the 2x2 block criterion through the cone oracle.
NormResult os_norm(const LevelElement& u, const ConeOptions& opt = {});

// ---------------------------------------------------------------- maps

/// Linear map given by target coefficients of each source basis element.
struct LinearMap {
  SystemPtr source;
  SystemPtr target;
  std::vector<CVector> images;
};

void check_map(const LinearMap& phi);
bool is_unital(const LinearMap& phi, double tol = 1e-10);
CVector apply(const LinearMap& phi, const CVector& c);
LevelElement apply(const LinearMap& phi, const LevelElement& u);
/// psi o phi.
LinearMap compose(const LinearMap& psi, const LinearMap& phi);
/// Images as matrices (target must be realized).
std::vector<CMatrix> image_matrices(const LinearMap& phi);
/// Map into the realized target given by matrices in its ambient algebra.
LinearMap map_from_matrices(const SystemPtr& source, const SystemPtr& target, const std::vector<CMatrix>& mats);

}  // namespace ostk
