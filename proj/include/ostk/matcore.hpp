#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ostk {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Thrown for malformed or inconsistent user input (bad dimensions, dependent bases, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative asymmetry above which ingestion emits a warning.
inline constexpr double kHermWarnTol = 1e-9;

/// Complex Hermitian matrix. Construction symmetrizes; the asymmetry that was
/// removed is kept so callers can decide whether to warn.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(const CMatrix& m);

  static HermMatrix identity(std::size_t dim);

  const CMatrix& mat() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double asymmetry() const { return asymmetry_; }

 private:
  CMatrix m_;
  double asymmetry_ = 0.0;
};

/// ||m - m*||_F / max(1, ||m||_F).
double hermitian_defect(const CMatrix& m);

/// (m + m*)/2.
CMatrix hermitian_part(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

/// Elementary matrix E_ij of size n (0-indexed).
CMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j);

/// Sum_ij E_ij (x) E_ji on C^n (x) C^n.
CMatrix swap_operator(std::size_t n);

struct EigenPair {
  double value;
  CVector vector;
};

/// Smallest eigenvalue. Throws InputError when the input is not Hermitian
/// within kHermWarnTol (relative).
double min_eig(const CMatrix& h);
double max_eig(const CMatrix& h);

/// Smallest eigenvalue with a unit eigenvector.
EigenPair min_eig_pair(const CMatrix& h);

/// All eigenvalues, ascending.
RVector eigenvalues(const CMatrix& h);

/// Real symmetric helpers.
double min_eig(const RMatrix& h);
double max_eig(const RMatrix& h);

/// trace(a^* b).
cplx hs_inner(const CMatrix& a, const CMatrix& b);

/// [[Re h, -Im h], [Im h, Re h]].
RMatrix realify(const CMatrix& h);

/// Inverse of realify on its range; averages the redundant blocks so that any
/// real symmetric PSD Y maps to a complex PSD matrix.
CMatrix complexify(const RMatrix& y);

/// Largest singular value.
double op_norm(const CMatrix& a);

/// PSD square root and inverse square root (eigenvalues clipped at zero for sqrt).
CMatrix psd_sqrt(const CMatrix& h);
CMatrix psd_inv_sqrt(const CMatrix& h);

/// Orthonormal (Hilbert-Schmidt) coordinates for Hermitian n x n matrices:
/// n^2 real numbers, diagonal first, then sqrt2*Re and sqrt2*Im of the upper part.
RVector herm_to_vec(const CMatrix& h);
CMatrix vec_to_herm(const RVector& v, std::size_t n);

/// Orthonormal basis of the Hermitian n x n matrices matching herm_to_vec.
std::vector<CMatrix> herm_basis(std::size_t n);

/// Orthonormal basis (columns) of the orthogonal complement of span(cols) in R^dim.
RMatrix orth_complement(const RMatrix& cols, double rank_tol = 1e-10);

/// Orthonormal basis (columns) of span(cols).
RMatrix orth_range(const RMatrix& cols, double rank_tol = 1e-10);

/// Partial trace over the first factor of C^a (x) C^b.
CMatrix partial_trace_first(const CMatrix& m, std::size_t a, std::size_t b);
/// Partial trace over the second factor of C^a (x) C^b.
CMatrix partial_trace_second(const CMatrix& m, std::size_t a, std::size_t b);

/// Block-diagonal direct sum.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

}  // namespace ostk
