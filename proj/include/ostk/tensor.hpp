#pragma once

#include "ostk/opsys.hpp"

namespace ostk {

/// Basis b_i (x) c_j at index i * dim(T) + j.
SystemPtr tensor_min(const SystemPtr& s, const SystemPtr& t);
SystemPtr tensor_max(const SystemPtr& s, const SystemPtr& t);
/// Commuting tensor; only defined when one factor is a C*-algebra (then equal to max).
SystemPtr tensor_c(const SystemPtr& s, const SystemPtr& t);

/// Realized system whose span is closed under multiplication.
bool is_cstar_algebra(const OperatorSystem& s);

CVector kron_coeffs(const CVector& a, const CVector& b);
/// p (x) q at level n_p * n_q, ordered (a,c),(b,d) -> a * n_q + c.
LevelElement product_element(const SystemPtr& ts, const LevelElement& p, const LevelElement& q);
/// sum_i A_i^* (P_i (x) Q_i) A_i at level A.cols().
LevelElement combine_blocks(const SystemPtr& ts, const std::vector<DecompositionBlock>& blocks);

ConeVerdict min_cone_member(const LevelElement& u, const ConeOptions& opt = {});
ConeVerdict max_cone_member(const LevelElement& u, const ConeOptions& opt = {});

/// Recomputes a decomposition certificate: every block factor is a cone member
/// and the blocks reproduce u up to the recorded slack (unit-scaled).
bool verify_decomposition(const LevelElement& u, const Certificate& cert, double tol);

/// phi1 (x) phi2 between tensor systems over the maps' sources and targets.
LinearMap tensor_map(const LinearMap& phi1, const LinearMap& phi2, const SystemPtr& source, const SystemPtr& target);

struct FunctorialityReport {
  int checked = 0;
  int preserved = 0;
  int undecided = 0;
  int violations = 0;
};

/// Pushes decomposition-certified max-cone members through phi1 (x) phi2 and
/// checks membership in the target max cone.
FunctorialityReport max_functoriality_check(const LinearMap& phi1, const LinearMap& phi2,
                                            const std::vector<LevelElement>& samples, const ConeOptions& opt = {});

}  // namespace ostk
