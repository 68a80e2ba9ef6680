#include "ostk/cones.hpp"

#include <cmath>

#include "ostk/dualize.hpp"
#include "ostk/maps.hpp"
#include "ostk/matricial.hpp"
#include "ostk/quotient.hpp"
#include "ostk/tensor.hpp"
#include "tensor_detail.hpp"

namespace ostk {

ConeVerdict cone_member(const LevelElement& u, const ConeOptions& opt) {
  check_element(u);
  switch (u.system->kind) {
    case SystemKind::Concrete:
      return spatial_cone_member(u, opt.tol);
    case SystemKind::Dual:
      return dual_cone_member(u, opt);
    case SystemKind::Quotient:
    case SystemKind::Coproduct:
      return quotient_cone_member(u, opt);
    case SystemKind::TensorMin:
      return min_cone_member(u, opt);
    case SystemKind::TensorMax:
      return max_cone_member(u, opt);
    case SystemKind::OminK:
      return omin_member(u, opt);
    case SystemKind::OmaxK:
      return omax_member(u, opt);
  }
  return undecided("cone", opt.tol, "unknown system kind");
}

namespace {

// Phi(X) = Tr_1[(X^T (x) I_k) C].
CMatrix choi_apply(const CMatrix& c, const CMatrix& x, std::size_t k) {
  const std::size_t d = x.rows();
  return partial_trace_first(CMatrix(kron(CMatrix(x.transpose()), CMatrix(CMatrix::Identity(k, k))) * c), d, k);
}

double rayleigh(const CMatrix& m, const CVector& v) {
  if (v.size() != m.rows() || v.norm() == 0.0) return std::numeric_limits<double>::infinity();
  return (v.adjoint() * hermitian_part(m) * v)(0, 0).real() / v.squaredNorm();
}

bool check_eigen(const CMatrix& m, const ConeVerdict& v) {
  const double tol = 10.0 * v.tol * std::max(1.0, op_norm(m));
  if (v.answer == Answer::Member) return min_eig(hermitian_part(m)) >= -tol;
  return rayleigh(m, v.cert.vector) < 0.0;
}

// Realization of u when one is available: the system's own, a parent's for
// k-structures, or the spatial one for tensors of realized factors.
bool witness_matrix(const LevelElement& u, CMatrix& out) {
  const auto& s = *u.system;
  if (s.realized()) {
    out = realize(u);
    return true;
  }
  if ((s.kind == SystemKind::OminK || s.kind == SystemKind::OmaxK) && s.parents[0]->realized()) {
    LevelElement p = u;
    p.system = s.parents[0];
    out = realize(p);
    return true;
  }
  if ((s.kind == SystemKind::TensorMin || s.kind == SystemKind::TensorMax) && s.parents[0]->realized() &&
      s.parents[1]->realized()) {
    LevelElement p = u;
    p.system = tensor_min(s.parents[0], s.parents[1]);
    out = realize(p);
    return true;
  }
  return false;
}

// Extension-SDP data: tr((b_k^T (x) H) C) = tr(H M_k).
bool check_extension(const OperatorSystem& s, const std::vector<CMatrix>& images, const ConeVerdict& v) {
  const std::size_t d = s.ambient_dim, q = images[0].rows();
  const double tol = 10.0 * v.tol;
  if (v.cert.matrices.size() != 1) return false;
  const CMatrix& c = v.cert.matrices[0];
  if (static_cast<std::size_t>(c.rows()) != d * q) return false;
  double scale = 1.0;
  for (const auto& m : images) scale = std::max(scale, m.norm());
  if (v.answer == Answer::Member) {
    if (min_eig(hermitian_part(c)) < -tol * std::max(1.0, op_norm(c))) return false;
    for (std::size_t k = 0; k < s.dim; ++k)
      if ((choi_apply(c, s.basis[k], q) - hermitian_part(images[k])).norm() > tol * scale) return false;
    return true;
  }
  // W must lie in the constraint span with pairing -1 against the data and
  // have lambda_min(W) * tr(phi(e)) > -1.
  const auto hb = herm_basis(q);
  RMatrix a(d * d * q * q, s.dim * hb.size());
  RVector rhs(s.dim * hb.size());
  for (std::size_t k = 0; k < s.dim; ++k)
    for (std::size_t r = 0; r < hb.size(); ++r) {
      a.col(k * hb.size() + r) = herm_to_vec(kron(CMatrix(s.basis[k].transpose()), hb[r]));
      rhs(k * hb.size() + r) = hs_inner(hb[r], hermitian_part(images[k])).real();
    }
  const CMatrix w = hermitian_part(c);
  const RVector wv = herm_to_vec(w);
  const RVector y = a.colPivHouseholderQr().solve(wv);
  if ((a * y - wv).norm() > tol * std::max(1.0, wv.norm())) return false;
  const double pair = y.dot(rhs);
  CMatrix unit_img = CMatrix::Zero(q, q);
  for (std::size_t k = 0; k < s.dim; ++k) unit_img += s.unit(k) * images[k];
  const double tr_unit = std::abs(unit_img.trace());
  // Every extension C has <W, C> = pair and <W, C> >= lambda_min(W) tr C.
  return pair < 0.0 && std::min(min_eig(w), 0.0) * tr_unit > pair * (1.0 - tol);
}

bool check_cp_realized(const OperatorSystem& s, const std::vector<CMatrix>& images, const ConeVerdict& v) {
  if (v.cert.kind == CertKind::EigenWitness) {
    if (v.answer == Answer::NotMember && v.cert.vector.size() == 0) {
      const std::size_t k = static_cast<std::size_t>(v.cert.level);
      return k < images.size() && hermitian_defect(images[k]) > 0.0;
    }
    if (s.dim != s.ambient_dim * s.ambient_dim) return false;
    return check_eigen(choi_matrix(s, images), v);
  }
  if (v.cert.kind == CertKind::SdpWitness || v.cert.kind == CertKind::SeparatingFunctional)
    return check_extension(s, images, v);
  return false;
}

bool check_cp(const SystemPtr& src, const std::vector<CMatrix>& images, const ConeVerdict& v) {
  const auto& s = *src;
  if (s.realized()) return check_cp_realized(s, images, v);
  if ((s.kind == SystemKind::Quotient || s.kind == SystemKind::Coproduct) && s.parents[0]->realized()) {
    const auto& parent = *s.parents[0];
    std::vector<CMatrix> pulled;
    for (std::size_t i = 0; i < parent.dim; ++i) {
      CMatrix m = CMatrix::Zero(images[0].rows(), images[0].cols());
      for (std::size_t j = 0; j < s.dim; ++j) m += s.quot_coords(j, i) * images[j];
      pulled.push_back(m);
    }
    return check_cp_realized(parent, pulled, v);
  }
  if (s.kind == SystemKind::Dual) {
    const auto& g = *s.parents[0];
    if (g.realized()) {
      if (v.answer == Answer::NotMember && v.cert.vector.size() == 0) {
        const std::size_t k = static_cast<std::size_t>(v.cert.level);
        return k < images.size() && hermitian_defect(images[k]) > 0.0;
      }
      const std::size_t q = images[0].rows();
      CMatrix c = CMatrix::Zero(g.ambient_dim * q, g.ambient_dim * q);
      for (std::size_t j = 0; j < g.dim; ++j) c += kron(g.basis[j], images[j]);
      return check_eigen(c, v);
    }
    if (g.kind == SystemKind::Dual && g.parents[0]->realized()) return check_cp_realized(*g.parents[0], images, v);
  }
  return false;
}

std::vector<CMatrix> coefficient_images(const LevelElement& u) {
  const std::size_t n = u.level;
  std::vector<CMatrix> out(u.system->dim, CMatrix::Zero(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t j = 0; j < out.size(); ++j) out[j](a, b) = u.at(a, b)(j);
  return out;
}

// M_n(J)_h directions, realized in the parent.
std::vector<CMatrix> kernel_dirs(const OperatorSystem& quot, std::size_t n) {
  const auto& parent = *quot.parents[0];
  std::vector<CMatrix> out;
  const auto hb = herm_basis(n);
  for (Eigen::Index j = 0; j < quot.kernel.cols(); ++j) {
    const CMatrix kj = realize(parent, CVector(quot.kernel.col(j).cast<cplx>()));
    for (const auto& h : hb) out.push_back(kron(h, kj));
  }
  return out;
}

bool check_quotient(const LevelElement& u, const ConeVerdict& v) {
  const auto& quot = *u.system;
  const std::size_t n = u.level;
  const CMatrix rep = hermitian_part(realize(representative(u)));
  const double tol = 10.0 * v.tol;
  const double scale = std::max(1.0, op_norm(rep));
  if (v.cert.matrices.size() != 1) return false;
  const CMatrix m = hermitian_part(v.cert.matrices[0]);
  if (m.rows() != rep.rows()) return false;
  const auto dirs = kernel_dirs(quot, n);
  if (v.answer == Answer::Member) {
    // j in M_n(J) and rep + j PSD.
    CMatrix proj = CMatrix::Zero(m.rows(), m.cols());
    if (!dirs.empty()) {
      RMatrix a(m.rows() * m.rows(), dirs.size());
      for (std::size_t i = 0; i < dirs.size(); ++i) a.col(i) = herm_to_vec(dirs[i]);
      const RVector c = a.colPivHouseholderQr().solve(herm_to_vec(m));
      proj = vec_to_herm(a * c, m.rows());
    }
    if ((proj - m).norm() > tol * std::max(1.0, m.norm())) return false;
    return min_eig(CMatrix(rep + m)) >= -tol * scale;
  }
  // W PSD, orthogonal to M_n(J), negative on rep.
  const double wn = std::max(op_norm(m), 1e-300);
  if (min_eig(m) < -tol * wn) return false;
  for (const auto& dir : dirs)
    if (std::abs(hs_inner(dir, m).real()) > tol * wn * dir.norm()) return false;
  return hs_inner(m, rep).real() < 0.0;
}

// Product functional v^*(phi (x) psi)_n(u) v with phi, psi from level-k members of S and T.
bool check_product(const LevelElement& u, const ConeVerdict& v) {
  const auto& ts = *u.system;
  if (v.cert.matrices.size() != 2 || ts.parents.size() < 2) return false;
  const auto& s = ts.parents[0];
  const auto& t = ts.parents[1];
  if (s->kind != SystemKind::Dual || t->kind != SystemKind::Dual) return false;
  const std::size_t k = static_cast<std::size_t>(v.cert.level);
  const auto& p = v.cert.matrices[0];
  const auto& q = v.cert.matrices[1];
  const double tol = 10.0 * v.tol;
  if (min_eig(hermitian_part(p)) < -tol * std::max(1.0, op_norm(p))) return false;
  if (min_eig(hermitian_part(q)) < -tol * std::max(1.0, op_norm(q))) return false;
  const LevelElement pe = element_from_realized(s->parents[0], k, p);
  const LevelElement qe = element_from_realized(t->parents[0], k, q);
  if ((realize(pe) - p).norm() > tol * std::max(1.0, p.norm())) return false;
  if ((realize(qe) - q).norm() > tol * std::max(1.0, q.norm())) return false;
  const CMatrix m = detail::apply_product(u, detail::coefficient_slices(pe), detail::coefficient_slices(qe));
  return rayleigh(m, v.cert.vector) < 0.0;
}

bool check_omin_functional(const LevelElement& u, const ConeVerdict& v) {
  const auto& sys = *u.system;
  const auto& parent = *sys.parents[0];
  if (v.cert.matrices.size() != 1) return false;
  const std::size_t k = sys.k, d = parent.ambient_dim, n = u.level;
  const CMatrix& c = v.cert.matrices[0];
  if (static_cast<std::size_t>(c.rows()) != d * k) return false;
  const double tol = 10.0 * v.tol;
  if (min_eig(hermitian_part(c)) < -tol * std::max(1.0, op_norm(c))) return false;
  if ((choi_apply(c, CMatrix::Identity(d, d), k) - CMatrix::Identity(k, k)).norm() > tol) return false;
  LevelElement p = u;
  p.system = sys.parents[0];
  const CMatrix um = realize(p);
  CMatrix img(n * k, n * k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) img.block(a * k, b * k, k, k) = choi_apply(c, um.block(a * d, b * d, d, d), k);
  return rayleigh(img, v.cert.vector) < 0.0;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

bool verify_verdict(const LevelElement& u, const ConeVerdict& v) {
  if (v.answer == Answer::Undecided) return true;
  const auto& s = *u.system;
  if (v.cert.kind == CertKind::Decomposition) return verify_decomposition(u, v.cert, v.tol);

  // Verdicts borrowed from the other tensor cone of the same factors.
  if (starts_with(v.route, "min-via-max/") || starts_with(v.route, "max-via-min/")) {
    ConeVerdict inner = v;
    inner.route = v.route.substr(v.route.find('/') + 1);
    LevelElement w = u;
    w.system = starts_with(v.route, "min-via-max/") ? tensor_max(s.parents[0], s.parents[1])
                                                     : tensor_min(s.parents[0], s.parents[1]);
    return verify_verdict(w, inner);
  }
  // Tensors read through one realized factor.
  if ((s.kind == SystemKind::TensorMin || s.kind == SystemKind::TensorMax) &&
      (starts_with(v.route, "min-amplified/") || starts_with(v.route, "max-amplified/"))) {
    ConeVerdict inner = v;
    inner.route = v.route.substr(v.route.find('/') + 1);
    const int factor = s.parents[0]->realized() ? 0 : 1;
    return verify_verdict(detail::amplify(u, factor), inner);
  }
  if (s.kind == SystemKind::Dual) return check_cp(s.parents[0], induced_images(u), v);
  if ((s.kind == SystemKind::TensorMin || s.kind == SystemKind::TensorMax) && s.parents.size() == 3 &&
      v.route.find("-dual/") != std::string::npos)
    return check_cp(s.parents[2], coefficient_images(u), v);
  if (v.route.find("min-product") != std::string::npos) return check_product(u, v);
  if (s.kind == SystemKind::Quotient || s.kind == SystemKind::Coproduct) return check_quotient(u, v);
  if (s.kind == SystemKind::OminK && v.cert.kind == CertKind::SeparatingFunctional) return check_omin_functional(u, v);

  if (v.cert.kind == CertKind::EigenWitness) {
    CMatrix m;
    if (!witness_matrix(u, m)) return false;
    if (v.answer == Answer::Member) {
      // A spatial MEMBER proves membership only where the cone is the spatial one.
      const bool spatial = s.realized() || s.kind == SystemKind::OminK || s.kind == SystemKind::TensorMin ||
                           (s.kind == SystemKind::OmaxK && u.level <= s.k) || starts_with(v.route, "max-spatial");
      if (!spatial) return false;
    }
    return check_eigen(m, v);
  }
  return false;
}

bool verify_cp(const LinearMap& phi, const ConeVerdict& v) {
  if (v.answer == Answer::Undecided) return true;
  if (starts_with(v.route, "pre-dual/")) {
    const auto& t0 = phi.source->parents[0];
    const auto& s0 = phi.target->parents[0];
    LinearMap pre{s0, t0, {}};
    for (std::size_t i = 0; i < s0->dim; ++i) {
      CVector c(t0->dim);
      for (std::size_t j = 0; j < t0->dim; ++j) c(j) = phi.images[j](i);
      pre.images.push_back(c);
    }
    ConeVerdict inner = v;
    inner.route = v.route.substr(9);
    return verify_cp(pre, inner);
  }
  if (!phi.target->realized()) return false;
  return check_cp(phi.source, image_matrices(phi), v);
}

bool verify_kpos(const LinearMap& phi, const ConeVerdict& v) {
  if (v.answer == Answer::Undecided) return true;
  if (starts_with(v.route, "pre-dual/")) {
    const auto& t0 = phi.source->parents[0];
    const auto& s0 = phi.target->parents[0];
    LinearMap pre{s0, t0, {}};
    for (std::size_t i = 0; i < s0->dim; ++i) {
      CVector c(t0->dim);
      for (std::size_t j = 0; j < t0->dim; ++j) c(j) = phi.images[j](i);
      pre.images.push_back(c);
    }
    ConeVerdict inner = v;
    inner.route = v.route.substr(9);
    return verify_kpos(pre, inner);
  }
  if (v.route != "kpos-search" || v.cert.vector.size() == 0) return verify_cp(phi, v);
  if (!phi.target->realized() || v.cert.matrices.size() != 1) return false;
  const auto& src = *phi.source;
  std::vector<CMatrix> images = image_matrices(phi);
  const OperatorSystem* s = &src;
  if ((src.kind == SystemKind::Quotient || src.kind == SystemKind::Coproduct) && src.parents[0]->realized()) {
    s = src.parents[0].get();
    std::vector<CMatrix> pulled;
    for (std::size_t i = 0; i < s->dim; ++i) {
      CMatrix m = CMatrix::Zero(images[0].rows(), images[0].cols());
      for (std::size_t j = 0; j < src.dim; ++j) m += src.quot_coords(j, i) * images[j];
      pulled.push_back(m);
    }
    images = std::move(pulled);
  }
  if (!s->realized()) return false;
  const CMatrix& x = v.cert.matrices[0];
  const std::size_t d = s->ambient_dim, q = images[0].rows();
  const std::size_t k = static_cast<std::size_t>(v.cert.level);
  if (x.rows() != static_cast<Eigen::Index>(k * d) || v.cert.vector.size() != static_cast<Eigen::Index>(k * q))
    return false;
  const double tol = 10.0 * v.tol;
  if (min_eig(hermitian_part(x)) < -tol * std::max(1.0, op_norm(x))) return false;
  CMatrix amp = CMatrix::Zero(k * q, k * q);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto c = coordinates(*s, x.block(a * d, b * d, d, d));
      if (c.residual > tol) return false;
      for (std::size_t i = 0; i < s->dim; ++i) amp.block(a * q, b * q, q, q) += c.coeffs(i) * images[i];
    }
  const CVector& w = v.cert.vector;
  return (w.dot(amp * w)).real() / w.squaredNorm() < -v.tol;
}

NormResult os_norm(const LevelElement& u, const ConeOptions& opt) {
  check_element(u);
  NormResult r;
  CMatrix m;
  if (u.system->realized() && witness_matrix(u, m)) {
    r.value = r.lower = r.upper = op_norm(m);
    r.exact = true;
    return r;
  }
  double lo = 0.0, hi = 1.0;
  bool bracketed = false;
  for (int i = 0; i < 60; ++i) {
    const auto v = cone_member(norm_block(u, hi), opt);
    if (v.answer == Answer::Member) {
      bracketed = true;
      break;
    }
    if (v.answer == Answer::Undecided) {
      r.lower = lo;
      r.upper = std::numeric_limits<double>::infinity();
      r.value = hi;
      return r;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!bracketed) throw std::runtime_error("os_norm: no upper bound found");
  r.exact = true;
  for (int i = 0; i < 60 && hi - lo > opt.tol * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const auto v = cone_member(norm_block(u, mid), opt);
    if (v.answer == Answer::Member) hi = mid;
    else if (v.answer == Answer::NotMember) lo = mid;
    else {
      r.exact = false;
      break;
    }
  }
  r.lower = lo;
  r.upper = hi;
  r.value = hi;
  return r;
}

}  // namespace ostk
