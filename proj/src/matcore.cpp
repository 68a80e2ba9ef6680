#include "ostk/matcore.hpp"

#include <algorithm>
#include <cmath>

namespace ostk {

namespace {

void require_hermitian(const CMatrix& h, const char* what) {
  if (h.rows() != h.cols()) {
    throw InputError(std::string(what) + ": matrix is not square");
  }
  if (hermitian_defect(h) > kHermWarnTol) {
    throw InputError(std::string(what) + ": matrix is not Hermitian");
  }
}

Eigen::SelfAdjointEigenSolver<CMatrix> herm_eig(const CMatrix& h, bool vectors) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(
      hermitian_part(h), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

HermMatrix::HermMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("HermMatrix: matrix is not square");
  asymmetry_ = hermitian_defect(m);
  m_ = hermitian_part(m);
}

HermMatrix HermMatrix::identity(std::size_t dim) {
  return HermMatrix(CMatrix::Identity(dim, dim));
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RMatrix kron(const RMatrix& a, const RMatrix& b) {
  RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix swap_operator(std::size_t n) {
  CMatrix s = CMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += kron(unit_matrix(n, i, j), unit_matrix(n, j, i));
  return s;
}

double min_eig(const CMatrix& h) {
  require_hermitian(h, "min_eig");
  return herm_eig(h, false).eigenvalues()(0);
}

double max_eig(const CMatrix& h) {
  require_hermitian(h, "max_eig");
  const auto ev = herm_eig(h, false).eigenvalues();
  return ev(ev.size() - 1);
}

EigenPair min_eig_pair(const CMatrix& h) {
  require_hermitian(h, "min_eig_pair");
  const auto es = herm_eig(h, true);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

RVector eigenvalues(const CMatrix& h) {
  require_hermitian(h, "eigenvalues");
  return herm_eig(h, false).eigenvalues();
}

double min_eig(const RMatrix& h) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es((h + h.transpose()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eig(const RMatrix& h) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es((h + h.transpose()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("hs_inner: dimension mismatch");
  }
  return (a.adjoint() * b).trace();
}

RMatrix realify(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix r(2 * n, 2 * h.cols());
  r.topLeftCorner(n, h.cols()) = h.real();
  r.topRightCorner(n, h.cols()) = -h.imag();
  r.bottomLeftCorner(n, h.cols()) = h.imag();
  r.bottomRightCorner(n, h.cols()) = h.real();
  return r;
}

CMatrix complexify(const RMatrix& y) {
  const Eigen::Index n = y.rows() / 2;
  CMatrix out(n, n);
  out.real() = (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n)) / 2.0;
  out.imag() = (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n)) / 2.0;
  return out;
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

CMatrix psd_sqrt(const CMatrix& h) {
  const auto es = herm_eig(h, true);
  const RVector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix psd_inv_sqrt(const CMatrix& h) {
  const auto es = herm_eig(h, true);
  if (es.eigenvalues()(0) <= 0.0) throw InputError("psd_inv_sqrt: matrix is not positive definite");
  const RVector d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

RVector herm_to_vec(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RVector v(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) v(k++) = h(i, i).real();
  const double s2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(k++) = s2 * h(i, j).real();
      v(k++) = s2 * h(i, j).imag();
    }
  return v;
}

CMatrix vec_to_herm(const RVector& v, std::size_t n) {
  CMatrix h = CMatrix::Zero(n, n);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = v(k++);
  const double s2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z(v(k) / s2, v(k + 1) / s2);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

std::vector<CMatrix> herm_basis(std::size_t n) {
  std::vector<CMatrix> out;
  out.reserve(n * n);
  for (std::size_t k = 0; k < n * n; ++k) out.push_back(vec_to_herm(RVector::Unit(n * n, k), n));
  return out;
}

RMatrix orth_range(const RMatrix& cols, double rank_tol) {
  if (cols.cols() == 0) return RMatrix(cols.rows(), 0);
  Eigen::JacobiSVD<RMatrix> svd(cols, Eigen::ComputeFullU);
  const RVector& s = svd.singularValues();
  const double scale = s.size() > 0 ? std::max(1.0, s(0)) : 1.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol * scale) ++r;
  return svd.matrixU().leftCols(r);
}

RMatrix orth_complement(const RMatrix& cols, double rank_tol) {
  const Eigen::Index dim = cols.rows();
  if (cols.cols() == 0) return RMatrix::Identity(dim, dim);
  Eigen::JacobiSVD<RMatrix> svd(cols, Eigen::ComputeFullU);
  const RVector& s = svd.singularValues();
  const double scale = s.size() > 0 ? std::max(1.0, s(0)) : 1.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol * scale) ++r;
  return svd.matrixU().rightCols(dim - r);
}

CMatrix partial_trace_first(const CMatrix& m, std::size_t a, std::size_t b) {
  CMatrix out = CMatrix::Zero(b, b);
  for (std::size_t i = 0; i < a; ++i) out += m.block(i * b, i * b, b, b);
  return out;
}

CMatrix partial_trace_second(const CMatrix& m, std::size_t a, std::size_t b) {
  CMatrix out(a, a);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) out(i, j) = m.block(i * b, j * b, b, b).trace();
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace ostk
