#include "ostk/matricial.hpp"

#include <cmath>

#include "ostk/atlas.hpp"
#include "ostk/maps.hpp"
#include "ostk/sdp_builder.hpp"
#include "search_util.hpp"

namespace ostk {

using detail::apply_choi;
using detail::sdp_options;

namespace {

SystemPtr k_structure(const SystemPtr& s, std::size_t k, SystemKind kind) {
  if (!s->realized()) throw InputError("OMIN/OMAX need a realized parent");
  if (k == 0) throw InputError("OMIN/OMAX need k >= 1");
  auto o = std::make_shared<OperatorSystem>();
  o->kind = kind;
  o->k = k;
  o->dim = s->dim;
  o->unit = s->unit;
  o->faithful_state = s->faithful_state;
  o->parents = {s};
  o->name = std::string(kind == SystemKind::OminK ? "OMIN_" : "OMAX_") + std::to_string(k) + "(" + s->name + ")";
  o->provenance = "structure agreeing with the parent up to level " + std::to_string(k);
  return o;
}

LevelElement on_parent(const LevelElement& u) {
  check_element(u);
  if (hermitian_defect(u) > 1e-6) throw InputError("cone query on a non-Hermitian element");
  LevelElement p = u;
  p.system = u.system->parents[0];
  return p;
}

ConeVerdict parent_verdict(const LevelElement& up, double tol, const std::string& route) {
  auto v = spatial_cone_member(up, tol);
  v.route = route;
  return v;
}

// (Phi(U_ab))_ab for a Choi matrix C of Phi : M_d -> M_k.
CMatrix amplify_choi(const CMatrix& c, const CMatrix& u, std::size_t n, std::size_t d, std::size_t k) {
  CMatrix out(n * k, n * k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.block(a * k, b * k, k, k) = apply_choi(c, u.block(a * d, b * d, d, d), k);
  return out;
}

CVector random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

CMatrix random_unit_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a.householderQr().householderQ();
}

// (Psi_K (x) id)(D) with K in M_k (x) M_n the Choi matrix of Psi : M_k -> M_n.
CMatrix apply_kraus_choi(const CMatrix& kc, const CMatrix& dm, std::size_t k, std::size_t n, std::size_t d) {
  CMatrix out = CMatrix::Zero(n * d, n * d);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s) {
      const CMatrix blk = dm.block(r * d, s * d, d, d);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const cplx w = kc(r * n + a, s * n + b);
          if (w != cplx(0.0)) out.block(a * d, b * d, d, d) += w * blk;
        }
    }
  return out;
}

// Rank-one Choi matrices of X -> (v^T X conj(v)) w w^* over a tight frame {w}
// of C^n (e_a, (e_a +- e_b)/sqrt2, (e_a +- i e_b)/sqrt2), rotated by a random
// unitary for seed > 0. Their images span M_n(S) and contain e_n positively.
std::vector<CMatrix> frame_kraus(std::size_t n, std::size_t k, int seed, std::mt19937_64& rng) {
  std::vector<CVector> frame;
  for (std::size_t a = 0; a < n; ++a) frame.push_back(CVector::Unit(n, a));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (cplx ph : {cplx(1.0), cplx(-1.0), cplx(0.0, 1.0), cplx(0.0, -1.0)})
        frame.push_back(r * (CVector::Unit(n, a) + ph * CVector::Unit(n, b)));
  CMatrix u = CMatrix::Identity(n, n);
  CVector v = CVector::Unit(k, 0);
  if (seed > 0) {
    u = random_unit_matrix(n, rng);
    v = random_unit(k, rng);
  }
  std::vector<CMatrix> out;
  for (const auto& w0 : frame) {
    const CVector w = u * w0;
    CVector x(k * n);
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t a = 0; a < n; ++a) x(q * n + a) = w(a) * v(q);
    out.push_back(x * x.adjoint());
  }
  return out;
}

}  // namespace

SystemPtr omin(const SystemPtr& s, std::size_t k) { return k_structure(s, k, SystemKind::OminK); }
SystemPtr omax(const SystemPtr& s, std::size_t k) { return k_structure(s, k, SystemKind::OmaxK); }

ConeVerdict omin_member(const LevelElement& u, const ConeOptions& opt) {
  const LevelElement up = on_parent(u);
  const auto& s = *up.system;
  const std::size_t n = u.level, k = u.system->k, d = s.ambient_dim;
  if (n <= k || k >= d) return parent_verdict(up, opt.tol, "omin-parent");
  const CMatrix um = hermitian_part(realize(up));
  const double scale = std::max(1.0, op_norm(um));
  if (min_eig(um) >= -opt.tol) {
    auto v = parent_verdict(up, opt.tol, "omin-spatial");
    v.cert.detail = "spatially positive elements lie in every k-min cone";
    return v;
  }
  const auto hb = herm_basis(k);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < std::max(1, opt.budget); ++restart) {
    const std::uint64_t seed = opt.seed * 1000003ULL + static_cast<std::uint64_t>(restart);
    std::mt19937_64 rng(seed);
    CVector v = random_unit(n * k, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 10; ++round) {
      // G = sum_ab U_ab^T (x) v_b v_a^*, so <G, C> = v^* (Phi(U_ab)) v.
      CMatrix g = CMatrix::Zero(d * k, d * k);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          g += kron(CMatrix(um.block(a * d, b * d, d, d).transpose()),
                    CMatrix(v.segment(b * k, k) * v.segment(a * k, k).adjoint()));
      SdpBuilder bld;
      const auto c = bld.add_psd(d * k);
      for (const auto& h : hb) bld.add_eq({{c, kron(CMatrix(CMatrix::Identity(d, d)), h)}}, {}, h.trace().real());
      bld.set_objective({{c, g}}, {});
      const auto r = bld.solve(sdp_options(opt.tol));
      if (!r.feasible) break;
      const CMatrix choi = hermitian_part(r.psd[0]);
      const auto ep = min_eig_pair(hermitian_part(amplify_choi(choi, um, n, d, k)));
      best = std::min(best, ep.value / scale);
      if (ep.value < -10.0 * opt.tol * scale && min_eig(choi) >= -opt.tol) {
        ConeVerdict out;
        out.answer = Answer::NotMember;
        out.tol = opt.tol;
        out.route = "omin-search";
        out.cert.kind = CertKind::SeparatingFunctional;
        out.cert.matrices = {choi};
        out.cert.vector = ep.vector;
        out.cert.value = ep.value;
        out.cert.level = static_cast<int>(k);
        out.cert.seed = seed;
        out.cert.detail = "ucp map into M_k (Choi matrix, Tr_1 C = I) with v^* (phi(u_ab)) v < 0";
        return out;
      }
      if (ep.value > prev - 1e-10) break;
      prev = ep.value;
      v = ep.vector;
    }
  }
  ConeVerdict out = undecided("omin-search", opt.tol, "no ucp map into M_k separates the element");
  out.cert.kind = CertKind::HierarchyLevel;
  out.cert.level = static_cast<int>(k);
  out.cert.value = best;
  return out;
}

ConeVerdict omax_member(const LevelElement& u, const ConeOptions& opt) {
  const LevelElement up = on_parent(u);
  const auto& sp = up.system;
  const std::size_t n = u.level, k = u.system->k, d = sp->ambient_dim;
  if (n <= k) return parent_verdict(up, opt.tol, "omax-parent");
  const CMatrix um = hermitian_part(realize(up));
  const auto ep = min_eig_pair(um);
  if (ep.value < -opt.tol) {
    auto v = parent_verdict(up, opt.tol, "omax-parent-cone");
    v.cert.detail = "violates the parent cone, which contains the k-max cone";
    return v;
  }
  const double scale = op_norm(um);
  if (scale == 0.0) {
    ConeVerdict v;
    v.answer = Answer::Member;
    v.tol = opt.tol;
    v.route = "omax-decomposition";
    v.cert.kind = CertKind::Decomposition;
    return v;
  }
  const CMatrix target = um / scale;
  const auto sd = detail::span_basis(*sp, k);
  const auto sk = detail::full_span(k * n);
  double best = std::numeric_limits<double>::infinity();
  for (int seed = 0; seed < std::max(1, opt.budget); ++seed) {
    const std::uint64_t sv = opt.seed * 1000003ULL + static_cast<std::uint64_t>(seed);
    std::mt19937_64 rng(sv);
    std::vector<CMatrix> dms;
    std::vector<CMatrix> ks = frame_kraus(n, k, seed, rng);
    const std::size_t nblocks = ks.size();
    bool d_next = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 40; ++round) {
      const detail::Step st =
          d_next ? detail::min_slack_step(
                       target, nblocks, sd,
                       [&](const CMatrix& x, std::size_t i) { return apply_kraus_choi(ks[i], x, k, n, d); }, opt.tol)
                 : detail::min_slack_step(
                       target, nblocks, sk,
                       [&](const CMatrix& x, std::size_t i) { return apply_kraus_choi(x, dms[i], k, n, d); }, opt.tol);
      if (!st.ok) break;
      (d_next ? dms : ks) = st.vars;
      d_next = !d_next;
      best = std::min(best, st.t);
      if (st.t <= opt.tol && dms.size() == nblocks) {
        ConeVerdict v;
        v.answer = Answer::Member;
        v.tol = opt.tol;
        v.route = "omax-decomposition";
        v.cert.kind = CertKind::Decomposition;
        v.cert.level = static_cast<int>(k);
        v.cert.seed = sv;
        v.cert.slack = st.t * scale;
        for (std::size_t i = 0; i < nblocks; ++i) {
          Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(ks[i]));
          const LevelElement dmi = element_from_realized(sp, k, CMatrix(dms[i] * scale));
          for (Eigen::Index l = 0; l < es.eigenvalues().size(); ++l) {
            const double lam = es.eigenvalues()(l);
            if (lam <= 1e-14 * std::max(1.0, es.eigenvalues().maxCoeff())) continue;
            // Kraus B with B_{c r} = sqrt(lam) w_{r n + c}; the compression is A = B^*.
            CMatrix bm(n, k);
            for (std::size_t r = 0; r < k; ++r)
              for (std::size_t c = 0; c < n; ++c) bm(c, r) = std::sqrt(lam) * es.eigenvectors()(r * n + c, l);
            v.cert.blocks.push_back({CMatrix(bm.adjoint()), dmi, LevelElement{}});
          }
        }
        v.cert.detail = "u + slack e = sum A^* D A with D in M_k(S)^+";
        return v;
      }
      if (st.t > prev * (1.0 - 1e-4)) break;
      prev = st.t;
    }
  }
  ConeVerdict v = undecided("omax-decomposition", opt.tol, "no k-block decomposition found");
  v.cert.kind = CertKind::HierarchyLevel;
  v.cert.level = static_cast<int>(k);
  v.cert.value = best;
  return v;
}

namespace {

struct RangeSdp {
  SdpBuilder b;
  std::size_t c = 0;
  CMatrix x;
  std::size_t n = 0;
};

void setup_range(RangeSdp& r, const SystemPtr& s, const CVector& x, std::size_t n) {
  if (!s->realized()) throw InputError("numerical range: system needs a realization");
  if (static_cast<std::size_t>(x.size()) != s->dim) throw InputError("numerical range: coefficient length mismatch");
  if (n == 0) throw InputError("numerical range: level must be positive");
  const std::size_t d = s->ambient_dim;
  r.x = realize(*s, x);
  r.n = n;
  r.c = r.b.add_psd(d * n);
  for (const auto& h : herm_basis(n))
    r.b.add_eq({{r.c, kron(CMatrix(CMatrix::Identity(d, d)), h)}}, {}, h.trace().real());
  // Extensions agree on S only through phi(x); other basis elements are free.
}

}  // namespace

ConeVerdict numerical_range_member(const SystemPtr& s, const CVector& x, const CMatrix& a, const ConeOptions& opt) {
  if (a.rows() != a.cols()) throw InputError("numerical range: target must be square");
  const std::size_t n = a.rows();
  RangeSdp r;
  setup_range(r, s, x, n);
  const CMatrix xt = r.x.transpose();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) r.b.add_complex_eq({{r.c, kron(xt, unit_matrix(n, q, p))}}, a(p, q));
  const auto res = r.b.feasibility(sdp_options(opt.tol));
  ConeVerdict v;
  v.tol = opt.tol;
  v.route = "numerical-range-sdp";
  if (res.feasible) {
    const CMatrix c = hermitian_part(res.psd[0]);
    const double lam = min_eig(c);
    const double pin = (apply_choi(c, r.x, n) - a).norm() / std::max(1.0, a.norm());
    const double unit = (apply_choi(c, CMatrix::Identity(r.x.rows(), r.x.cols()), n) - CMatrix::Identity(n, n)).norm();
    if (lam >= -10.0 * opt.tol && pin <= 10.0 * opt.tol && unit <= 10.0 * opt.tol) {
      v.answer = Answer::Member;
      v.cert.kind = CertKind::SdpWitness;
      v.cert.matrices = {c};
      v.cert.value = lam;
      v.cert.slack = std::max(pin, unit);
      v.cert.detail = "Choi matrix of a ucp extension with phi(x) = A";
      return v;
    }
    return undecided("numerical-range-sdp", opt.tol, "witness failed re-verification");
  }
  if (res.infeasible && res.dual.size() > 0) {
    // Every feasible C has trace n, so <sum y_i A_i, C> = b'y = 1 needs lambda_max >= 1/n.
    const double viol = r.b.farkas_violation(res.dual);
    if (viol * static_cast<double>(n) < 1.0 - 1e-6) {
      const double by = r.b.rhs_dot(res.dual);
      v.answer = Answer::NotMember;
      v.cert.kind = CertKind::SeparatingFunctional;
      v.cert.matrices = {CMatrix(-r.b.adjoint(res.dual / by, r.c))};
      v.cert.value = viol;
      v.cert.detail = "Farkas functional: lambda_max(sum y_i A_i) * n < b'y = 1";
      return v;
    }
    return undecided("numerical-range-sdp", opt.tol, "infeasibility certificate failed re-verification");
  }
  return undecided("numerical-range-sdp", opt.tol, "SDP stalled");
}

double numerical_range_support(const SystemPtr& s, const CVector& x, const CMatrix& direction, const ConeOptions& opt) {
  if (direction.rows() != direction.cols()) throw InputError("numerical range: direction must be square");
  const std::size_t n = direction.rows();
  RangeSdp r;
  setup_range(r, s, x, n);
  // Re tr(D^* phi(x)) = Re tr((x^T (x) D^*) C).
  r.b.set_objective({{r.c, CMatrix(-kron(CMatrix(r.x.transpose()), CMatrix(direction.adjoint())))}}, {});
  const auto res = r.b.solve(sdp_options(opt.tol));
  if (!res.feasible) throw std::runtime_error("numerical range: support SDP failed");
  const CMatrix img = apply_choi(hermitian_part(res.psd[0]), r.x, n);
  return (direction.adjoint() * img).trace().real();
}

SystemPtr block_algebra(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw InputError("block_algebra: no blocks");
  std::size_t total = 0;
  for (auto s : sizes) {
    if (s == 0) throw InputError("block_algebra: empty block");
    total += s;
  }
  std::vector<CMatrix> basis{CMatrix::Identity(total, total)};
  std::size_t off = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    const std::size_t sz = sizes[b];
    const auto fa = full_algebra(sz);
    for (std::size_t i = (b == 0 ? 1 : 0); i < fa->dim; ++i) {
      CMatrix m = CMatrix::Zero(total, total);
      m.block(off, off, sz, sz) = fa->basis[i];
      basis.push_back(m);
    }
    off += sz;
  }
  std::string name = "A(";
  for (std::size_t b = 0; b < sizes.size(); ++b) name += (b ? "+" : "") + std::to_string(sizes[b]);
  return make_concrete(name + ")", total, basis);
}

KLift klift_demo(const LinearMap& phi, const std::vector<std::size_t>& sizes, const std::vector<bool>& ideal,
                 std::size_t k, const ConeOptions& opt) {
  check_map(phi);
  if (sizes.size() != ideal.size() || sizes.empty()) throw InputError("klift: block flags do not match block sizes");
  std::size_t kept = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    if (!ideal[b]) kept += sizes[b];
  if (kept == 0) throw InputError("klift: the ideal is the whole algebra");
  if (!phi.target->realized() || phi.target->ambient_dim != kept)
    throw InputError("klift: map target is not the quotient block algebra");
  const auto a = block_algebra(sizes);
  const auto imgs = image_matrices(phi);
  const auto& s = *phi.source;
  std::vector<CMatrix> lifted;
  for (std::size_t i = 0; i < s.dim; ++i) {
    CMatrix m = CMatrix::Zero(a->ambient_dim, a->ambient_dim);
    std::size_t off = 0, qoff = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      const std::size_t sz = sizes[b];
      if (ideal[b]) {
        m.block(off, off, sz, sz) = s.faithful_state(i) * CMatrix::Identity(sz, sz);
      } else {
        m.block(off, off, sz, sz) = imgs[i].block(qoff, qoff, sz, sz);
        qoff += sz;
      }
      off += sz;
    }
    lifted.push_back(m);
  }
  KLift out;
  out.lift = map_from_matrices(phi.source, a, lifted);
  out.unital = is_unital(out.lift, 1e-9);
  out.cp = cp_check(out.lift, opt);
  out.kpos = kpos_refute(out.lift, k, opt);
  return out;
}

}  // namespace ostk
