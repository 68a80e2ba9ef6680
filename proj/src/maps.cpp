#include "ostk/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ostk/atlas.hpp"
#include "ostk/sdp_builder.hpp"

namespace ostk {

namespace {

sdp::Options sdp_options(double tol) {
  sdp::Options o;
  o.tol = std::min(tol, 1e-9);
  return o;
}

ConeVerdict non_selfadjoint(const std::vector<CMatrix>& images, double tol, const std::string& route) {
  for (std::size_t k = 0; k < images.size(); ++k) {
    const double defect = (images[k] - images[k].adjoint()).norm();
    if (defect > 10.0 * tol * std::max(1.0, images[k].norm())) {
      ConeVerdict v;
      v.answer = Answer::NotMember;
      v.tol = tol;
      v.route = route;
      v.cert.kind = CertKind::EigenWitness;
      v.cert.value = -defect;
      v.cert.level = static_cast<int>(k);
      v.cert.detail = "image of a self-adjoint basis element is not self-adjoint";
      return v;
    }
  }
  return {};
}

ConeVerdict eigen_verdict(const CMatrix& m, double tol, const std::string& route) {
  const auto ep = min_eig_pair(hermitian_part(m));
  ConeVerdict v;
  v.tol = tol;
  v.route = route;
  v.cert.kind = CertKind::EigenWitness;
  v.cert.value = ep.value;
  v.cert.matrices = {m};
  if (ep.value >= -tol) {
    v.answer = Answer::Member;
  } else {
    v.answer = Answer::NotMember;
    v.cert.vector = ep.vector;
  }
  return v;
}

// Extension SDP: C PSD in M_d (x) M_q with tr((b_k^T (x) H_r) C) = tr(H_r M_k).
ConeVerdict arveson(const OperatorSystem& s, const std::vector<CMatrix>& images, double tol) {
  const std::size_t d = s.ambient_dim, q = images[0].rows();
  const auto hb = herm_basis(q);
  SdpBuilder b;
  const auto c = b.add_psd(d * q);
  for (std::size_t k = 0; k < s.dim; ++k) {
    const CMatrix bt = s.basis[k].transpose();
    const CMatrix mk = hermitian_part(images[k]);
    for (const auto& h : hb) b.add_eq({{c, kron(bt, h)}}, {}, hs_inner(h, mk).real());
  }
  const auto r = b.feasibility(sdp_options(tol));
  if (r.feasible) {
    const double lam = min_eig(r.psd[0]);
    const double res = b.residual(r.psd, r.scalars);
    if (lam >= -10.0 * tol && res <= 10.0 * tol) {
      ConeVerdict v;
      v.answer = Answer::Member;
      v.tol = tol;
      v.route = "extension-sdp";
      v.cert.kind = CertKind::SdpWitness;
      v.cert.matrices = {r.psd[0]};
      v.cert.value = lam;
      v.cert.slack = res;
      return v;
    }
    return undecided("extension-sdp", tol, "extension witness failed re-verification");
  }
  if (r.infeasible && r.dual.size() > 0) {
    const double by = b.rhs_dot(r.dual);
    if (by > 0.0) {
      const RVector y = r.dual / by;
      const CMatrix adj = b.adjoint(y, c);
      const double lam = max_eig(adj);
      // Every extension has trace tr(phi(e)), so 1 = <adj, C> <= lam+ tr(phi(e)) is violated.
      CMatrix unit_img = CMatrix::Zero(q, q);
      for (std::size_t k = 0; k < s.dim; ++k) unit_img += s.unit(k) * images[k];
      const double tr_unit = std::abs(unit_img.trace());
      if (std::max(lam, 0.0) * std::max(1.0, tr_unit) < 1.0 && lam <= 10.0 * tol) {
        ConeVerdict v;
        v.answer = Answer::NotMember;
        v.tol = tol;
        v.route = "extension-sdp";
        v.cert.kind = CertKind::SeparatingFunctional;
        v.cert.matrices = {CMatrix(-adj)};
        v.cert.value = lam;
        v.cert.detail = "W = -sum y_i A_i is PSD up to value and pairs to -1 with every extension";
        return v;
      }
    }
    return undecided("extension-sdp", tol, "infeasibility certificate failed re-verification");
  }
  return undecided("extension-sdp", tol, "SDP stalled");
}

ConeVerdict cp_realized(const OperatorSystem& s, const std::vector<CMatrix>& images, double tol) {
  if (auto v = non_selfadjoint(images, tol, "choi"); v.answer != Answer::Undecided) return v;
  if (s.dim == s.ambient_dim * s.ambient_dim) return eigen_verdict(choi_matrix(s, images), tol, "choi");
  return arveson(s, images, tol);
}

// Parent images of phi o q for a quotient source.
std::vector<CMatrix> pull_back(const OperatorSystem& quot, const std::vector<CMatrix>& images) {
  const auto& parent = *quot.parents[0];
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < parent.dim; ++i) {
    CMatrix m = CMatrix::Zero(images[0].rows(), images[0].cols());
    for (std::size_t j = 0; j < quot.dim; ++j) m += quot.quot_coords(j, i) * images[j];
    out.push_back(m);
  }
  return out;
}

}  // namespace

CMatrix choi_matrix(const OperatorSystem& source, const std::vector<CMatrix>& images) {
  const std::size_t d = source.ambient_dim, q = images[0].rows();
  CMatrix c = CMatrix::Zero(d * q, d * q);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto co = coordinates(source, unit_matrix(d, i, j));
      CMatrix img = CMatrix::Zero(q, q);
      for (std::size_t k = 0; k < source.dim; ++k) img += co.coeffs(k) * images[k];
      c.block(i * q, j * q, q, q) = img;
    }
  return c;
}

ConeVerdict cp_check_matrices(const SystemPtr& source, const std::vector<CMatrix>& images, const ConeOptions& opt) {
  if (images.size() != source->dim) throw InputError("cp_check: need one image per source basis element");
  const std::size_t q = images.empty() ? 0 : images[0].rows();
  for (const auto& m : images)
    if (static_cast<std::size_t>(m.rows()) != q || static_cast<std::size_t>(m.cols()) != q)
      throw InputError("cp_check: images must be square matrices of one size");
  const auto& s = *source;
  if (s.realized()) return cp_realized(s, images, opt.tol);
  if ((s.kind == SystemKind::Quotient || s.kind == SystemKind::Coproduct) && s.parents[0]->realized()) {
    auto v = cp_realized(*s.parents[0], pull_back(s, images), opt.tol);
    v.route = "quotient-pullback/" + v.route;
    return v;
  }
  if (s.kind == SystemKind::Dual) {
    const auto& g = *s.parents[0];
    if (g.realized()) {
      if (auto v = non_selfadjoint(images, opt.tol, "dual-choi"); v.answer != Answer::Undecided) return v;
      CMatrix c = CMatrix::Zero(g.ambient_dim * q, g.ambient_dim * q);
      for (std::size_t j = 0; j < g.dim; ++j) c += kron(g.basis[j], images[j]);
      return eigen_verdict(c, opt.tol, "dual-choi");
    }
    if (g.kind == SystemKind::Dual && g.parents[0]->realized()) {
      auto v = cp_realized(*g.parents[0], images, opt.tol);
      v.route = "double-dual/" + v.route;
      return v;
    }
  }
  return undecided("cp_check", opt.tol, "unsupported source kind: " + std::string(to_string(s.kind)));
}

ConeVerdict cp_check(const LinearMap& phi, const ConeOptions& opt) {
  check_map(phi);
  const auto& src = *phi.source;
  const auto& tgt = *phi.target;
  if (src.kind == SystemKind::Dual && tgt.kind == SystemKind::Dual && src.parents[0]->realized() &&
      tgt.parents[0]->realized()) {
    const auto& t0 = src.parents[0];
    const auto& s0 = tgt.parents[0];
    LinearMap pre{s0, t0, {}};
    for (std::size_t i = 0; i < s0->dim; ++i) {
      CVector c(t0->dim);
      for (std::size_t j = 0; j < t0->dim; ++j) c(j) = phi.images[j](i);
      pre.images.push_back(c);
    }
    auto v = cp_check(pre, opt);
    v.route = "pre-dual/" + v.route;
    return v;
  }
  if (!tgt.realized())
    return undecided("cp_check", opt.tol, "target has no spatial realization");
  return cp_check_matrices(phi.source, image_matrices(phi), opt);
}

namespace {

struct KposSearch {
  const OperatorSystem& s;
  const std::vector<CMatrix>& images;
  std::size_t k;
  double tol;
  std::size_t d, q;
  std::vector<CMatrix> dual;
  std::vector<CMatrix> dirs;

  KposSearch(const OperatorSystem& s_, const std::vector<CMatrix>& im, std::size_t k_, double t)
      : s(s_), images(im), k(k_), tol(t), d(s_.ambient_dim), q(im[0].rows()) {
    dual = hs_dual_basis(s);
    if (s.dim < d * d) dirs = level_herm_basis(s, k);
  }

  // Coefficients c_abj of a realized X in M_k(S).
  std::vector<CVector> coeffs(const CMatrix& x) const {
    std::vector<CVector> c(k * k, CVector(s.dim));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t j = 0; j < s.dim; ++j) c[a * k + b](j) = (dual[j] * x.block(a * d, b * d, d, d)).trace();
    return c;
  }

  CMatrix rebuild(const std::vector<CVector>& c) const {
    CMatrix x = CMatrix::Zero(k * d, k * d);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t j = 0; j < s.dim; ++j) x.block(a * d, b * d, d, d) += c[a * k + b](j) * s.basis[j];
    return x;
  }

  CMatrix amplify(const std::vector<CVector>& c) const {
    CMatrix out = CMatrix::Zero(k * q, k * q);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t j = 0; j < s.dim; ++j) out.block(a * q, b * q, q, q) += c[a * k + b](j) * images[j];
    return out;
  }

  std::optional<CMatrix> best_x(const CVector& v) const {
    CMatrix w = CMatrix::Zero(k * d, k * d);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const CVector va = v.segment(a * q, q), vb = v.segment(b * q, q);
        for (std::size_t j = 0; j < s.dim; ++j) {
          const cplx coef = va.dot(images[j] * vb);
          w.block(b * d, a * d, d, d) += coef * dual[j];
        }
      }
    SdpBuilder bld;
    const auto x = bld.add_psd(k * d);
    if (!dirs.empty()) bld.add_affine(x, CMatrix::Zero(k * d, k * d), dirs);
    bld.add_eq({{x, CMatrix::Identity(k * d, k * d)}}, {}, 1.0);
    bld.set_objective({{x, w}}, {});
    sdp::Options o;
    o.tol = 1e-9;
    const auto r = bld.solve(o);
    if (r.psd.empty() || r.raw.status == sdp::Status::Infeasible) return std::nullopt;
    return r.psd[0];
  }
};

}  // namespace

ConeVerdict kpos_refute(const LinearMap& phi, std::size_t k, const ConeOptions& opt) {
  check_map(phi);
  if (k == 0) throw InputError("kpos_refute: k must be at least 1");
  const auto& src = *phi.source;
  const auto& tgt = *phi.target;

  // Map between duals of realized systems: search on the pre-dual map.
  if (src.kind == SystemKind::Dual && tgt.kind == SystemKind::Dual && src.parents[0]->realized() &&
      tgt.parents[0]->realized()) {
    const auto& t0 = src.parents[0];
    const auto& s0 = tgt.parents[0];
    LinearMap pre{s0, t0, {}};
    for (std::size_t i = 0; i < s0->dim; ++i) {
      CVector c(t0->dim);
      for (std::size_t j = 0; j < t0->dim; ++j) c(j) = phi.images[j](i);
      pre.images.push_back(c);
    }
    auto v = kpos_refute(pre, k, opt);
    v.route = "pre-dual/" + v.route;
    if (v.answer == Answer::NotMember) {
      // The compression t -> V* t V (columns of V are the blocks of v) is a
      // positive element of M_k(T^d) whose image is not positive.
      const std::size_t q = t0->ambient_dim;
      std::vector<CVector> psi(k * k, CVector(t0->dim));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          for (std::size_t j = 0; j < t0->dim; ++j)
            psi[a * k + b](j) = v.cert.vector.segment(a * q, q).dot(t0->basis[j] * v.cert.vector.segment(b * q, q));
      v.cert.functional = psi;
      v.cert.detail = "functional: compression in M_k(T^d)^+ mapped outside M_k(S^d)^+";
    }
    return v;
  }

  if (!tgt.realized()) return undecided("kpos", opt.tol, "target has no spatial realization");
  const SystemPtr cp_source = phi.source;
  std::vector<CMatrix> images = image_matrices(phi);

  auto cp = cp_check_matrices(cp_source, images, opt);
  if (cp.answer == Answer::Member) {
    cp.route = "kpos/cp";
    return cp;
  }

  const OperatorSystem* s = &src;
  if ((src.kind == SystemKind::Quotient || src.kind == SystemKind::Coproduct) && src.parents[0]->realized()) {
    images = pull_back(src, images);
    s = src.parents[0].get();
  }
  if (!s->realized()) return undecided("kpos", opt.tol, "source has no spatial realization");
  if (auto v = non_selfadjoint(images, opt.tol, "kpos"); v.answer != Answer::Undecided) return v;

  KposSearch search(*s, images, k, opt.tol);
  const std::size_t q = search.q;
  const int restarts = std::max(1, opt.budget);
  double best_seen = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(k * q);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
    v.normalize();
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 25; ++it) {
      const auto x = search.best_x(v);
      if (!x) break;
      auto c = search.coeffs(*x);
      CMatrix xr = hermitian_part(search.rebuild(c));
      const double shift = std::max(0.0, -min_eig(xr));
      if (shift > 0.0) {
        xr += shift * CMatrix::Identity(xr.rows(), xr.cols());
        c = search.coeffs(xr);
      }
      const CMatrix amp = hermitian_part(search.amplify(c));
      const auto ep = min_eig_pair(amp);
      v = ep.vector;
      const double val = v.dot(amp * v).real();
      best_seen = std::min(best_seen, val);
      if (val < -opt.tol && min_eig(xr) >= 0.0) {
        ConeVerdict out;
        out.answer = Answer::NotMember;
        out.tol = opt.tol;
        out.route = "kpos-search";
        out.cert.kind = CertKind::EigenWitness;
        out.cert.value = val;
        out.cert.vector = v;
        out.cert.matrices = {xr};
        out.cert.level = static_cast<int>(k);
        out.cert.seed = opt.seed;
        return out;
      }
      if (val > prev - 1e-12) break;
      prev = val;
    }
  }
  auto u = undecided("kpos-search", opt.tol, "no violation found within budget");
  u.cert.kind = CertKind::HierarchyLevel;
  u.cert.level = static_cast<int>(k);
  u.cert.value = best_seen;
  u.cert.seed = opt.seed;
  return u;
}

Unitalized unitalize(const LinearMap& phi) {
  check_map(phi);
  if (!phi.target->realized()) throw InputError("unitalize: target has no spatial realization");
  const CMatrix pe = hermitian_part(realize(*phi.target, apply(phi, phi.source->unit)));
  if (min_eig(pe) <= 1e-8) throw InputError("unitalize: phi(e) is not positive definite");
  Unitalized u;
  u.r = psd_sqrt(pe);
  const CMatrix rinv = psd_inv_sqrt(pe);
  std::vector<CMatrix> mats;
  for (const auto& m : image_matrices(phi)) mats.push_back(rinv * m * rinv);
  bool inside = true;
  for (const auto& m : mats) inside = inside && coordinates(*phi.target, m).residual <= 1e-8;
  const SystemPtr target = inside ? phi.target : full_algebra(phi.target->ambient_dim);
  u.psi = map_from_matrices(phi.source, target, mats);
  return u;
}

}  // namespace ostk
