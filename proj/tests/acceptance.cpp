// Acceptance criteria 1-11: one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/cones.hpp"
#include "ostk/dualize.hpp"
#include "ostk/maps.hpp"
#include "ostk/matricial.hpp"
#include "ostk/quotient.hpp"
#include "ostk/sdp.hpp"
#include "ostk/suites.hpp"
#include "ostk/tensor.hpp"

using namespace ostk;
using namespace testutil;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

double oracle_min_eig(const CMatrix& h) { return herm_eigenvalues_oracle((h + h.adjoint()) / 2.0).front(); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Images of the basis of full(a) under X -> sum_ij X_ij C_(ij), C a Choi matrix.
std::vector<CMatrix> choi_images(const OperatorSystem& src, const CMatrix& c, std::size_t b) {
  const std::size_t a = src.ambient_dim;
  std::vector<CMatrix> out;
  for (const auto& x : src.basis) {
    CMatrix m = CMatrix::Zero(b, b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) m += x(i, j) * c.block(i * b, j * b, b, b);
    out.push_back(m);
  }
  return out;
}

CMatrix kron_realize(const OperatorSystem& s, const OperatorSystem& t, const CVector& c) {
  CMatrix m = CMatrix::Zero(s.ambient_dim * t.ambient_dim, s.ambient_dim * t.ambient_dim);
  for (std::size_t i = 0; i < s.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) m += c(i * t.dim + j) * kron(s.basis[i], t.basis[j]);
  return m;
}

// ---------------------------------------------------------------- 1

Result criterion1() {
  Result r;
  auto m2 = full_algebra(2);
  std::vector<CMatrix> tr;
  for (const auto& b : m2->basis) tr.push_back(b.transpose());
  const auto t = map_from_matrices(m2, m2, tr);
  const auto vt = cp_check(t);
  // independent: the Choi matrix of the transpose is SWAP with eigenvalues +-1
  const double swap_min = oracle_min_eig(swap_operator(2));
  if (vt.answer != Answer::NotMember || std::abs(vt.cert.value + 1.0) > 1e-8 || std::abs(swap_min + 1.0) > 1e-8 ||
      !verify_cp(t, vt)) {
    r.pass = false;
    r.detail += "transpose not refuted at -1; ";
  }
  const auto id = map_from_matrices(m2, m2, m2->basis);
  const auto vi = cp_check(id);
  if (vi.answer != Answer::Member || !verify_cp(id, vi)) {
    r.pass = false;
    r.detail += "identity rejected; ";
  }
  std::mt19937_64 rng(101);
  int accepted = 0;
  for (int s = 0; s < 50; ++s) {
    const std::size_t a = 2 + s % 2, b = 2 + (s / 2) % 2;
    const CMatrix c = random_psd(a * b, rng, 1 + s % (a * b));
    auto src = full_algebra(a);
    const auto phi = map_from_matrices(src, full_algebra(b), choi_images(*src, c, b));
    const auto v = cp_check(phi);
    accepted += v.answer == Answer::Member && verify_cp(phi, v) && oracle_min_eig(c) >= -1e-9 * op_norm(c);
  }
  if (accepted != 50) r.pass = false;
  r.detail += "transpose Choi min-eig " + std::to_string(vt.cert.value) + ", random cp accepted " +
              std::to_string(accepted) + "/50";
  return r;
}

// ---------------------------------------------------------------- 2

Result criterion2() {
  Result r;
  const std::vector<std::pair<SystemPtr, SystemPtr>> pairs{{diag_algebra(2), tridiagonal(3)},
                                                           {full_algebra(2), full_algebra(3)}};
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g;
  int agree = 0, total = 0;
  ConeOptions opt;
  opt.tol = 1e-6;
  for (const auto& [s, t] : pairs) {
    const auto ts = tensor_min(s, t);
    const auto sd = dual_system(s);
    for (int k = 0; k < 200; ++k) {
      const bool member = k % 2 == 0;
      CVector c(ts->dim);
      for (auto& x : c) x = g(rng);
      const CMatrix m = kron_realize(*s, *t, c);
      const double lo = oracle_min_eig(m), sc = op_norm(m);
      const double margin = uniform(rng, 0.01, 0.5) * sc * (member ? 1.0 : -1.0);
      // shift by the unit I (x) I
      const CMatrix shifted = m + (margin - lo) * CMatrix::Identity(m.rows(), m.cols());
      const auto u = element_from_realized(ts, 1, shifted);
      LinearMap phi{sd, t, {}};
      for (std::size_t i = 0; i < s->dim; ++i) phi.images.push_back(u.at(0, 0).segment(i * t->dim, t->dim));
      const auto v = cp_check(phi, opt);
      ++total;
      if (v.answer == (member ? Answer::Member : Answer::NotMember) && verify_cp(phi, v) &&
          (oracle_min_eig(shifted) >= 0.0) == member)
        ++agree;
    }
  }
  r.pass = agree == total;
  r.detail = std::to_string(agree) + "/" + std::to_string(total) + " elements agree with their maps";
  return r;
}

// ---------------------------------------------------------------- 3

Result criterion3() {
  Result r;
  auto m2 = full_algebra(2);
  auto tmin = tensor_min(m2, m2);
  auto tmax = tensor_max(m2, m2);
  auto d = dual_system(m2);
  auto mind = tensor_min(d, d);
  std::mt19937_64 rng(303);
  auto functional = [&](const CMatrix& dm) {
    LevelElement f = zero_element(mind, 1);
    for (std::size_t k = 0; k < tmin->dim; ++k) f.at(0, 0)(k) = (dm * tmin->basis[k]).trace();
    return f;
  };
  std::vector<LevelElement> fs, us;
  for (int k = 0; k < 30; ++k) {
    const CMatrix dm = random_psd(4, rng, 1 + k % 4);
    const auto f = functional(dm);
    const auto v = cone_member(f);
    if (v.answer == Answer::Member && verify_verdict(f, v)) fs.push_back(f);
    CMatrix x = random_psd(4, rng, 1 + (k + 1) % 4);
    auto u = element_from_realized(tmin, 1, x);
    u.system = tmax;
    const auto w = cone_member(u);
    if (w.answer == Answer::Member && verify_verdict(u, w)) us.push_back(u);
  }
  double worst = 0.0;
  for (const auto& f : fs)
    for (const auto& u : us) worst = std::min(worst, pairing(u, f).real());
  // constructed non-members: a density with a negative eigenvalue
  int separated = 0;
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = random_herm(4, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CMatrix dm = h - (es.eigenvalues()(0) + uniform(rng, 0.01, 0.5)) * CMatrix::Identity(4, 4);
    const auto f = functional(dm);
    const auto v = cone_member(f);
    // independent separating element: the negative eigenvector as a positive max-cone element
    const CVector w = es.eigenvectors().col(0);
    auto u = element_from_realized(tmin, 1, w * w.adjoint());
    u.system = tmax;
    if (v.answer == Answer::NotMember && verify_verdict(f, v) && pairing(u, f).real() < 0.0 &&
        cone_member(u).answer == Answer::Member)
      ++separated;
  }
  r.pass = fs.size() == 30 && us.size() == 30 && worst >= -1e-7 && separated == 20;
  std::ostringstream os;
  os << fs.size() * us.size() << " member pairs, min pairing " << worst << ", separated non-members " << separated
     << "/20";
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------- 4

Result criterion4() {
  Result r;
  auto m2 = full_algebra(2);
  auto tmin = tensor_min(m2, m2);
  auto tmax = tensor_max(m2, m2);
  std::mt19937_64 rng(404);
  int members = 0, refuted = 0, exact_agree = 0;
  ConeOptions forced;
  forced.force_hierarchy = true;
  forced.hier_level = 2;
  for (int k = 0; k < 100; ++k) {
    const CMatrix x = random_psd(4, rng);
    auto u = element_from_realized(tmin, 1, x);
    u.system = tmax;
    const auto v = cone_member(u, forced);
    if (v.answer == Answer::Member && verify_verdict(u, v)) ++members;
    if (v.answer == Answer::NotMember) ++refuted;
    const auto e = cone_member(u);
    if ((e.answer == Answer::Member) == (oracle_min_eig(x) >= -1e-8)) ++exact_agree;
  }
  r.pass = members >= 90 && refuted == 0 && exact_agree == 100;
  r.detail = "hierarchy certified " + std::to_string(members) + "/100, refuted " + std::to_string(refuted) +
             ", exact path agrees " + std::to_string(exact_agree) + "/100";
  return r;
}

}  // namespace

namespace {

// ---------------------------------------------------------------- 5

LevelElement quotient_element(const SystemPtr& q, const CMatrix& x, std::size_t n) {
  const auto up = element_from_realized(q->parents[0], n, x);
  LevelElement u = zero_element(q, n);
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) u.coeffs[k] = quotient_coords(*q, up.coeffs[k]);
  return u;
}

// Every 3x3 block diagonal with zero trace.
bool in_mn_j3(const CMatrix& d, double tol) {
  const std::size_t n = d.rows() / 3;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const CMatrix blk = d.block(3 * a, 3 * b, 3, 3);
      if ((blk - CMatrix(blk.diagonal().asDiagonal())).norm() > tol || std::abs(blk.trace()) > tol) return false;
    }
  return true;
}

// Every 3x3 block has constant diagonal: orthogonal to M_n(J_3).
bool annihilates_j3(const CMatrix& w, double tol) {
  const std::size_t n = w.rows() / 3;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(w(3 * a + i, 3 * b + i) - w(3 * a, 3 * b)) > tol) return false;
  return true;
}

Result criterion5() {
  Result r;
  auto q = canonical("M(3)/J(3)");
  std::mt19937_64 rng(505);
  int recovered = 0, separated = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 2, d = 3 * n;
    CMatrix x = random_psd(d, rng, 1 + k % (d - 1));
    for (std::size_t a = 0; a < n; ++a) {
      CMatrix j = CMatrix::Zero(3, 3);
      const double c1 = uniform(rng, -1, 1), c2 = uniform(rng, -1, 1);
      j(0, 0) = c1;
      j(1, 1) = c2 - c1;
      j(2, 2) = -c2;
      x.block(3 * a, 3 * a, 3, 3) += j;
    }
    const auto u = quotient_element(q, x, n);
    const auto v = cone_member(u);
    if (v.answer != Answer::Member || v.cert.matrices.size() != 1) continue;
    const CMatrix y = realize(representative(u)) + v.cert.matrices[0];
    const double lo = oracle_min_eig(y);
    worst = std::min(worst, lo);
    if (lo >= -1e-8 && in_mn_j3(y - x, 1e-8)) ++recovered;
  }
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + k % 2, d = 3 * n;
    CMatrix w = CMatrix::Zero(d, d);
    const CMatrix a = random_psd(n, rng);
    CMatrix corr = random_psd(3, rng);
    const RVector s = corr.diagonal().real().cwiseSqrt().cwiseInverse();
    corr = s.cast<cplx>().asDiagonal() * corr * s.cast<cplx>().asDiagonal();
    w = kron(a, corr);
    CMatrix x = random_herm(d, rng);
    x -= ((w * x).trace().real() / w.trace().real() + uniform(rng, 0.05, 1.0)) * CMatrix::Identity(d, d);
    const auto u = quotient_element(q, x, n);
    const auto v = cone_member(u);
    if (v.answer != Answer::NotMember || v.cert.matrices.size() != 1) continue;
    const CMatrix& f = v.cert.matrices[0];
    const double sc = std::max(1.0, op_norm(f));
    if (oracle_min_eig(f) >= -1e-9 * sc && annihilates_j3(f, 1e-8 * sc) && (f * x).trace().real() < 0.0) ++separated;
  }
  r.pass = recovered == 50 && separated == 20;
  std::ostringstream os;
  os << "witnesses recovered " << recovered << "/50 (worst min-eig " << worst << "), separating functionals "
     << separated << "/20";
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------- 6

Result criterion6() {
  Result r;
  const auto g = gamma_images(2);
  std::vector<CMatrix> expect(5, CMatrix::Zero(4, 4));
  expect[0] = CMatrix::Identity(4, 4);
  expect[1](0, 1) = 1.0;
  expect[2](1, 0) = 1.0;
  expect[3](2, 3) = 1.0;
  expect[4](3, 2) = 1.0;
  auto s2d = canonical("S2d");
  bool exact = g.size() == 5;
  for (std::size_t i = 0; exact && i < 5; ++i) exact = g[i] == expect[i];
  for (std::size_t i = 0; exact && i < 2; ++i)
    exact = realize(*s2d, snd_generator(2, i, false)) == expect[1 + 2 * i] &&
            realize(*s2d, snd_generator(2, i, true)) == expect[2 + 2 * i];

  auto q = canonical("T(3)/J(3)");
  auto dq = dual_system(q);
  const auto& t3 = *q->parents[0];
  std::vector<CMatrix> reps;
  for (std::size_t k = 0; k < q->dim; ++k) reps.push_back(realize(t3, CVector(q->reps.col(k).cast<cplx>())));
  std::mt19937_64 rng(606);
  ConeOptions opt;
  opt.tol = 1e-6;
  int agree = 0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = 1 + s % 2;
    CMatrix m = CMatrix::Zero(4 * n, 4 * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        CMatrix blk = CMatrix::Zero(4, 4);
        const cplx p = a == b ? cplx(uniform(rng, -1, 1)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
        blk(0, 0) = blk(1, 1) = blk(2, 2) = blk(3, 3) = p;
        blk(0, 1) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
        blk(2, 3) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
        blk(1, 0) = a == b ? std::conj(blk(0, 1)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
        blk(3, 2) = a == b ? std::conj(blk(2, 3)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
        m.block(4 * a, 4 * b, 4, 4) = blk;
        if (a != b) m.block(4 * b, 4 * a, 4, 4) = blk.adjoint();
      }
    m += (uniform(rng, -0.4, 0.4) * op_norm(m) - oracle_min_eig(m)) * CMatrix::Identity(4 * n, 4 * n);
    const bool psd = oracle_min_eig(m) >= 0.0;
    // functional on S_2 = T(3)/J(3): e -> a, g_i -> 3 [E_{i,i+1}]
    LevelElement f = zero_element(dq, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const CMatrix x = m.block(4 * a, 4 * b, 4, 4);
        for (std::size_t k = 0; k < q->dim; ++k) {
          const CMatrix& rk = reps[k];
          f.at(a, b)(k) = (x(0, 0) * rk.trace() + x(0, 1) * rk(0, 1) + x(1, 0) * rk(1, 0) + x(2, 3) * rk(1, 2) +
                           x(3, 2) * rk(2, 1)) /
                          3.0;
        }
      }
    const auto va = cone_member(f, opt);
    const auto ex = element_from_realized(s2d, n, m);
    const auto vs = cone_member(ex, opt);
    if ((va.answer == Answer::Member) == psd && va.answer != Answer::Undecided && verify_verdict(f, va) &&
        (vs.answer == Answer::Member) == psd)
      ++agree;
  }
  r.pass = exact && agree == 100;
  r.detail = std::string(exact ? "block pattern exact" : "block pattern MISMATCH") + ", abstract/spatial agree " +
             std::to_string(agree) + "/100";
  return r;
}

// ---------------------------------------------------------------- 7

Result criterion7() {
  Result r;
  auto c2 = diag_algebra(2);
  auto m3 = full_algebra(3);
  auto cop = coproduct(c2, c2);
  std::mt19937_64 rng(707);
  int embed_ok = 0, embed_total = 0;
  for (int which = 0; which < 2; ++which) {
    const auto emb = coproduct_embedding(cop, which);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int s = 0; s < 10; ++s) {
        // n x n blocks of diagonal 2x2 matrices
        CMatrix m = CMatrix::Zero(2 * n, 2 * n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = a; b < n; ++b)
            for (std::size_t i = 0; i < 2; ++i) {
              const cplx z = a == b ? cplx(uniform(rng, -1, 1)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
              m(2 * a + i, 2 * b + i) = z;
              m(2 * b + i, 2 * a + i) = std::conj(z);
            }
        m += (uniform(rng, -0.3, 0.3) * op_norm(m) - oracle_min_eig(m)) * CMatrix::Identity(2 * n, 2 * n);
        const bool psd = oracle_min_eig(m) >= 0.0;
        const auto u = ostk::apply(emb, element_from_realized(c2, n, m));
        const auto v = cone_member(u);
        ++embed_total;
        if ((v.answer == Answer::Member) == psd && v.answer != Answer::Undecided && verify_verdict(u, v)) ++embed_ok;
      }
  }
  int universal_ok = 0;
  for (int s = 0; s < 20; ++s) {
    auto ucp = [&] {
      const CMatrix w = random_complex(3, 3, rng).householderQr().householderQ();
      RVector dg(3);
      for (auto& x : dg) x = uniform(rng, 0.0, 1.0);
      const CMatrix p = w * dg.cast<cplx>().asDiagonal() * w.adjoint();
      return map_from_matrices(c2, m3, {CMatrix::Identity(3, 3), CMatrix(2.0 * p - CMatrix::Identity(3, 3))});
    };
    const auto phi = ucp(), psi = ucp();
    const auto uni = coproduct_universal(cop, phi, psi);
    const auto v = cp_check(uni);
    bool ok = v.answer == Answer::Member && verify_cp(uni, v) && is_unital(uni);
    const auto pi = compose(uni, coproduct_embedding(cop, 0));
    const auto pj = compose(uni, coproduct_embedding(cop, 1));
    for (std::size_t k = 0; k < c2->dim; ++k)
      ok = ok && (pi.images[k] - phi.images[k]).norm() < 1e-9 && (pj.images[k] - psi.images[k]).norm() < 1e-9;
    universal_ok += ok;
  }
  r.pass = cop->dim == 3 && embed_ok == embed_total && universal_ok == 20;
  r.detail = "dim " + std::to_string(cop->dim) + ", embeddings " + std::to_string(embed_ok) + "/" +
             std::to_string(embed_total) + ", universal ucp " + std::to_string(universal_ok) + "/20";
  return r;
}

// ---------------------------------------------------------------- 8

Result criterion8() {
  Result r;
  auto m2 = full_algebra(2);
  auto sw = element_from_realized(m2, 2, swap_operator(2));
  auto u1 = sw;
  u1.system = omin(m2, 1);
  int refuted = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ConeOptions opt;
    opt.seed = seed;
    refuted += cone_member(u1, opt).answer == Answer::NotMember;
  }
  auto u2 = sw;
  u2.system = omin(m2, 2);
  const auto v = cone_member(u2);
  const bool ok2 = v.answer == Answer::NotMember && v.cert.kind == CertKind::EigenWitness &&
                   std::abs(v.cert.value + 1.0) <= 1e-8 && verify_verdict(u2, v);
  r.pass = refuted == 0 && ok2;
  std::ostringstream os;
  os << "OMIN_1 refutations " << refuted << "/10, OMIN_2 witness " << v.cert.value;
  r.detail = os.str();
  return r;
}

}  // namespace

namespace {

// ---------------------------------------------------------------- 9

Result criterion9() {
  Result r;
  const CMatrix one = CMatrix::Identity(1, 1);
  auto c2 = diag_algebra(2);
  CMatrix d01 = CMatrix::Zero(2, 2);
  d01(1, 1) = 1.0;
  const CVector x = coordinates(*c2, d01).coeffs;
  const double up = numerical_range_support(c2, x, one), down = numerical_range_support(c2, x, -one);
  bool ok = std::abs(up - 1.0) <= 1e-8 && std::abs(down) <= 1e-8;

  // normal matrix diag(0, 1, i): w_1 is the triangle with these vertices
  auto c3 = diag_algebra(3);
  const std::vector<cplx> vertices{0.0, 1.0, cplx(0.0, 1.0)};
  CVector dg(3);
  for (int i = 0; i < 3; ++i) dg(i) = vertices[i];
  const CVector y = coordinates(*c3, CMatrix(dg.asDiagonal())).coeffs;
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * M_PI * k / 64.0;
    const cplx d = std::polar(1.0, th);
    double hull = -1e300;
    for (const auto& v : vertices) hull = std::max(hull, (std::conj(d) * v).real());
    worst = std::max(worst, std::abs(numerical_range_support(c3, y, d * one) - hull));
  }
  ok = ok && worst <= 1e-6;
  r.pass = ok;
  std::ostringstream os;
  os << "diag(0,1) supports " << up << ", " << -down << "; triangle max deviation " << worst << " over 64 directions";
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------- 10

Result criterion10() {
  Result r;
  int fails = 0, undecided = 0, checks = 0;
  std::string where;
  for (std::uint64_t seed : {1u, 7u, 42u})
    for (const auto& name : suite_names()) {
      const auto rep = run_suite(name, seed);
      fails += rep.failed;
      undecided += rep.undecided;
      checks += static_cast<int>(rep.checks.size());
      if (rep.failed) where += " " + name + "@" + std::to_string(seed);
    }
  r.pass = fails == 0;
  r.detail = std::to_string(checks) + " checks over 3 seeds, " + std::to_string(fails) + " failed, " +
             std::to_string(undecided) + " undecided" + where;
  return r;
}

// ---------------------------------------------------------------- 11

double jacobi_min(const RMatrix& m) { return jacobi_eigenvalues((m + m.transpose()) / 2.0).front(); }
double jacobi_max(const RMatrix& m) { return jacobi_eigenvalues((m + m.transpose()) / 2.0).back(); }

double inner(const RMatrix& a, const RMatrix& b) { return (a.array() * b.array()).sum(); }

sdp::Problem random_problem(std::mt19937_64& rng, bool feasible) {
  sdp::Problem p;
  const std::size_t nb = 1 + rng() % 3, m = 1 + rng() % 30;
  for (std::size_t b = 0; b < nb; ++b) p.blocks.push_back(1 + rng() % 20);
  std::vector<RMatrix> x0, s0;
  for (auto d : p.blocks) {
    x0.push_back(random_real_psd(d, rng) + RMatrix::Identity(d, d));
    s0.push_back(random_real_psd(d, rng, 1 + rng() % d));
  }
  RVector y0(m);
  std::normal_distribution<double> g;
  for (auto& v : y0) v = g(rng);
  for (std::size_t i = 0; i < m; ++i) {
    sdp::Constraint c;
    for (std::size_t b = 0; b < nb; ++b) c.terms.push_back({b, random_sym(p.blocks[b], rng)});
    for (const auto& t : c.terms) c.rhs += inner(t.coeff, x0[t.block]);
    p.constraints.push_back(std::move(c));
  }
  if (feasible) {
    for (std::size_t b = 0; b < nb; ++b) {
      RMatrix cb = s0[b];
      for (std::size_t i = 0; i < m; ++i) cb += y0(i) * p.constraints[i].terms[b].coeff;
      p.objective.push_back(cb);
    }
  } else {
    // trace of everything equals -1
    sdp::Constraint c;
    for (std::size_t b = 0; b < nb; ++b) c.terms.push_back({b, RMatrix::Identity(p.blocks[b], p.blocks[b])});
    c.rhs = -1.0;
    p.constraints.push_back(std::move(c));
  }
  return p;
}

Result criterion11() {
  Result r;
  std::mt19937_64 rng(1111);
  int solved = 0, certified = 0;
  double worst_gap = 0.0, worst_res = 0.0, worst_eig = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto p = random_problem(rng, true);
    const auto s = sdp::solve(p);
    if (s.status != sdp::Status::Optimal) continue;
    double res = 0.0, pobj = 0.0, dobj = 0.0, eig = 0.0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      double lhs = 0.0;
      for (const auto& t : p.constraints[i].terms) lhs += inner(t.coeff, s.primal[t.block]);
      res = std::max(res, std::abs(lhs - p.constraints[i].rhs) / (1.0 + std::abs(p.constraints[i].rhs)));
      dobj += s.dual(i) * p.constraints[i].rhs;
    }
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      pobj += inner(p.objective[b], s.primal[b]);
      RMatrix slack = p.objective[b];
      for (std::size_t i = 0; i < p.constraints.size(); ++i) slack -= s.dual(i) * p.constraints[i].terms[b].coeff;
      const double sc = 1.0 + slack.norm();
      eig = std::min({eig, jacobi_min(slack) / sc, jacobi_min(s.primal[b]) / (1.0 + s.primal[b].norm())});
    }
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    worst_gap = std::max(worst_gap, gap);
    worst_res = std::max(worst_res, res);
    worst_eig = std::min(worst_eig, eig);
    if (gap <= 1e-7 && res <= 1e-7 && eig >= -1e-7) ++solved;
  }
  for (int k = 0; k < 10; ++k) {
    const auto p = random_problem(rng, false);
    const auto s = sdp::solve(p);
    if (s.status != sdp::Status::Infeasible || !s.farkas) continue;
    const RVector& y = *s.farkas;
    double by = 0.0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) by += y(i) * p.constraints[i].rhs;
    double top = -1e300;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      RMatrix a = RMatrix::Zero(p.blocks[b], p.blocks[b]);
      for (std::size_t i = 0; i < p.constraints.size(); ++i)
        for (const auto& t : p.constraints[i].terms)
          if (t.block == b) a += y(i) * t.coeff;
      top = std::max(top, jacobi_max(a));
    }
    if (by > 0.0 && top / by <= 1e-7) ++certified;
  }
  r.pass = solved == 50 && certified == 10;
  std::ostringstream os;
  os << "optimal " << solved << "/50 (gap " << worst_gap << ", residual " << worst_res << ", min-eig " << worst_eig
     << "), Farkas certified " << certified << "/10";
  r.detail = os.str();
  return r;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::function<Result()> run;
    double limit;
  };
  const std::vector<Entry> entries{{1, criterion1, 60},  {2, criterion2, 120},  {3, criterion3, 120},
                                   {4, criterion4, 120}, {5, criterion5, 60},   {6, criterion6, 120},
                                   {7, criterion7, 120}, {8, criterion8, 60},   {9, criterion9, 60},
                                   {10, criterion10, 900}, {11, criterion11, 300}};
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = e.run();
    } catch (const std::exception& ex) {
      res = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = res.pass && secs <= e.limit;
    failed += !pass;
    std::printf("criterion %d: %s %s (%.1fs, limit %.0fs)\n", e.id, pass ? "PASS" : "FAIL", res.detail.c_str(), secs,
                e.limit);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
