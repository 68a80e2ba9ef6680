#include <cmath>
#include <random>

#include "ostk/sdp_builder.hpp"
#include "search_util.hpp"
#include "tensor_detail.hpp"

namespace ostk::detail {

namespace {

// Level-n realized combination sum_{r,r'} X_{(ck+r),(c'k+r')} (x) Y_{(ck+r),(c'k+r')}.
CMatrix hadamard_combine(const CMatrix& x, const CMatrix& y, std::size_t n, std::size_t k, std::size_t d1,
                         std::size_t d2) {
  const std::size_t dd = d1 * d2;
  CMatrix out = CMatrix::Zero(n * dd, n * dd);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t cp = 0; cp < n; ++cp)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t rp = 0; rp < k; ++rp) {
          const std::size_t al = c * k + r, be = cp * k + rp;
          out.block(c * dd, cp * dd, dd, dd) +=
              kron(CMatrix(x.block(al * d1, be * d1, d1, d1)), CMatrix(y.block(al * d2, be * d2, d2, d2)));
        }
  return out;
}

CMatrix realize_tensor(const LevelElement& u) {
  const auto& s = *u.system->parents[0];
  const auto& t = *u.system->parents[1];
  const std::size_t n = u.level, dd = s.ambient_dim * t.ambient_dim;
  std::vector<CMatrix> basis;
  for (const auto& b : s.basis)
    for (const auto& c : t.basis) basis.push_back(kron(b, c));
  CMatrix out = CMatrix::Zero(n * dd, n * dd);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CMatrix blk = CMatrix::Zero(dd, dd);
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (u.at(a, b)(i) != cplx(0.0)) blk += u.at(a, b)(i) * basis[i];
      out.block(a * dd, b * dd, dd, dd) = blk;
    }
  return out;
}

}  // namespace

std::vector<CMatrix> coefficient_slices(const LevelElement& p) {
  const std::size_t k = p.level;
  std::vector<CMatrix> out(p.system->dim, CMatrix::Zero(k, k));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t i = 0; i < out.size(); ++i) out[i](r, s) = p.at(r, s)(i);
  return out;
}

CMatrix apply_product(const LevelElement& u, const std::vector<CMatrix>& pm, const std::vector<CMatrix>& qm) {
  const std::size_t n = u.level, n2 = qm.size();
  const std::size_t kk = pm[0].rows() * qm[0].rows();
  CMatrix out = CMatrix::Zero(n * kk, n * kk);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const CVector& c = u.at(a, b);
      for (std::size_t i = 0; i < pm.size(); ++i)
        for (std::size_t j = 0; j < n2; ++j)
          if (c(i * n2 + j) != cplx(0.0)) out.block(a * kk, b * kk, kk, kk) += c(i * n2 + j) * kron(pm[i], qm[j]);
    }
  return out;
}

ConeVerdict max_hierarchy(const LevelElement& u, const ConeOptions& opt) {
  const auto& ts = u.system;
  const auto& s = ts->parents[0];
  const auto& t = ts->parents[1];
  const std::size_t n = u.level, k = std::max(1, opt.hier_level), m = n * k;
  const std::size_t d1 = s->ambient_dim, d2 = t->ambient_dim;
  const CMatrix full = hermitian_part(realize_tensor(u));

  // Outer pass: the spatial min cone contains the max cone.
  const auto ep = min_eig_pair(full);
  if (ep.value < -opt.tol) {
    ConeVerdict v;
    v.answer = Answer::NotMember;
    v.tol = opt.tol;
    v.route = "max-hierarchy/min-spatial";
    v.cert.kind = CertKind::EigenWitness;
    v.cert.value = ep.value;
    v.cert.vector = ep.vector;
    v.cert.detail = "violates the spatial cone, which contains the max cone";
    return v;
  }

  const double scale = op_norm(full);
  CMatrix sel = CMatrix::Zero(m * m, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < k; ++r) sel((c * k + r) * m + (c * k + r), c) = 1.0;
  if (scale == 0.0) {
    ConeVerdict v;
    v.answer = Answer::Member;
    v.tol = opt.tol;
    v.route = "max-hierarchy";
    v.cert.kind = CertKind::Decomposition;
    v.cert.blocks.push_back({sel, zero_element(s, m), zero_element(t, m)});
    v.cert.level = static_cast<int>(k);
    return v;
  }
  const CMatrix target = full / scale;
  const auto sp = span_basis(*s, m);
  const auto sq = span_basis(*t, m);
  const std::size_t nblocks = std::max<std::size_t>(2, (ts->dim + k * k - 1) / (k * k) + 1);

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_seed = 0;
  for (int seed = 0; seed < std::max(1, opt.budget); ++seed) {
    std::mt19937_64 rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(seed));
    std::vector<CMatrix> p, q;
    bool left_next = true;
    if (seed == 0) {
      q = {CMatrix::Identity(m * d2, m * d2)};
      while (q.size() < nblocks) q.push_back(random_extreme(sq, rng, opt.tol));
    } else if (seed == 1) {
      p = {CMatrix::Identity(m * d1, m * d1)};
      while (p.size() < nblocks) p.push_back(random_extreme(sp, rng, opt.tol));
      left_next = false;
    } else {
      for (std::size_t i = 0; i < nblocks; ++i) q.push_back(random_extreme(sq, rng, opt.tol));
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 8; ++round) {
      const Step st =
          left_next
              ? min_slack_step(target, nblocks, sp,
                               [&](const CMatrix& x, std::size_t i) { return hadamard_combine(x, q[i], n, k, d1, d2); },
                               opt.tol)
              : min_slack_step(target, nblocks, sq,
                               [&](const CMatrix& y, std::size_t i) { return hadamard_combine(p[i], y, n, k, d1, d2); },
                               opt.tol);
      if (!st.ok) break;
      (left_next ? p : q) = st.vars;
      left_next = !left_next;
      if (st.t < best) {
        best = st.t;
        best_seed = static_cast<std::uint64_t>(seed);
      }
      if (st.t <= opt.tol && p.size() == nblocks && q.size() == nblocks) {
        ConeVerdict v;
        v.answer = Answer::Member;
        v.tol = opt.tol;
        v.route = "max-hierarchy";
        v.cert.kind = CertKind::Decomposition;
        v.cert.level = static_cast<int>(k);
        v.cert.seed = opt.seed * 1000003ULL + static_cast<std::uint64_t>(seed);
        v.cert.slack = st.t * scale;
        for (std::size_t i = 0; i < nblocks; ++i)
          v.cert.blocks.push_back(
              {sel, element_from_realized(s, m, CMatrix(p[i] * scale)), element_from_realized(t, m, q[i])});
        v.cert.detail = "u + slack e = sum A^*(P_i (x) Q_i) A";
        return v;
      }
      if (st.t > prev * (1.0 - 1e-3)) break;
      prev = st.t;
    }
  }
  ConeVerdict v = undecided("max-hierarchy", opt.tol, "no decomposition found at this level");
  v.cert.kind = CertKind::HierarchyLevel;
  v.cert.level = static_cast<int>(k);
  v.cert.value = best;
  v.cert.seed = opt.seed * 1000003ULL + best_seed;
  return v;
}

ConeVerdict product_refuter(const LevelElement& u, const ConeOptions& opt) {
  const auto& ts = *u.system;
  const auto& s = ts.parents[0]->parents[0];
  const auto& t = ts.parents[1]->parents[0];
  const std::size_t k = std::max(1, opt.hier_level);
  const auto sp = span_basis(*s, k);
  const auto sq = span_basis(*t, k);
  auto slices = [&](const SystemPtr& sys, const CMatrix& x) {
    return coefficient_slices(element_from_realized(sys, k, x));
  };
  // Minimizes v^* (phi (x) psi)_n(u) v over one side, trace-normalized.
  auto optimize = [&](const CMatrix& fixed, bool left, const CVector& vec) -> CMatrix {
    const auto& span = left ? sp : sq;
    const auto& sys = left ? s : t;
    const auto fixed_slices = slices(left ? t : s, fixed);
    const std::size_t nd = span[0].rows();
    CMatrix g = CMatrix::Zero(nd, nd);
    for (const auto& dir : span) {
      const CMatrix m = left ? apply_product(u, slices(sys, dir), fixed_slices)
                             : apply_product(u, fixed_slices, slices(sys, dir));
      g += (vec.adjoint() * m * vec)(0, 0).real() * dir;
    }
    SdpBuilder b;
    const auto x = b.add_psd(nd);
    b.add_affine(x, CMatrix::Zero(nd, nd), span);
    b.add_eq({{x, CMatrix::Identity(nd, nd)}}, {}, static_cast<double>(nd));
    b.set_objective({{x, g}}, {});
    const auto r = b.solve(sdp_options(opt.tol));
    if (!r.feasible) return CMatrix();
    return project(hermitian_part(r.psd[0]), span);
  };

  for (int restart = 0; restart < std::max(1, opt.budget); ++restart) {
    std::mt19937_64 rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(restart));
    CMatrix p = random_boundary(sp, rng);
    CMatrix q = random_boundary(sq, rng);
    for (int round = 0; round < 8; ++round) {
      const CMatrix m = apply_product(u, slices(s, p), slices(t, q));
      const auto ep = min_eig_pair(hermitian_part(m));
      if (ep.value < -10.0 * opt.tol * std::max(1.0, op_norm(m)) && min_eig(p) >= -opt.tol &&
          min_eig(q) >= -opt.tol) {
        ConeVerdict v;
        v.answer = Answer::NotMember;
        v.tol = opt.tol;
        v.route = "min-product";
        v.cert.kind = CertKind::SeparatingFunctional;
        v.cert.value = ep.value;
        v.cert.vector = ep.vector;
        v.cert.matrices = {p, q};
        v.cert.level = static_cast<int>(k);
        v.cert.seed = opt.seed * 1000003ULL + static_cast<std::uint64_t>(restart);
        v.cert.detail = "cp pair given by P in M_k(S)^+, Q in M_k(T)^+ and vector v";
        return v;
      }
      const CMatrix np = optimize(q, true, ep.vector);
      if (np.size() == 0) break;
      p = np;
      const CMatrix m2 = apply_product(u, slices(s, p), slices(t, q));
      const auto ep2 = min_eig_pair(hermitian_part(m2));
      const CMatrix nq = optimize(p, false, ep2.vector);
      if (nq.size() == 0) break;
      q = nq;
    }
  }
  return undecided("min-product", opt.tol, "no product violation found within budget");
}

}  // namespace ostk::detail
