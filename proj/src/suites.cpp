#include "ostk/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "ostk/atlas.hpp"
#include "ostk/cones.hpp"
#include "ostk/dualize.hpp"
#include "ostk/maps.hpp"
#include "ostk/matricial.hpp"
#include "ostk/quotient.hpp"
#include "ostk/tensor.hpp"

namespace ostk {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

namespace {

using Task = std::function<CheckRecord()>;
using Rng = std::mt19937_64;

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng task_rng(std::uint64_t seed, std::size_t index) { return Rng(splitmix(seed * 1315423911ULL + index)); }

std::string check_id(const std::string& stem, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "-%03zu", i);
  return stem + buf;
}

// Collects verdicts of one check and decides its outcome.
struct Probe {
  CheckRecord rec;
  std::string certs;
  bool contradiction = false;
  bool open = false;

  void record(const std::string& oracle, const ConeVerdict& v, bool verified) {
    rec.verdicts.push_back({oracle, v.answer, v.route});
    certs += dump(to_json(v.cert));
    if (!verified) flag(oracle + " certificate failed re-verification");
    if (v.answer == Answer::Undecided) open = true;
  }
  void flag(const std::string& why) {
    contradiction = true;
    rec.note += (rec.note.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) { rec.note += (rec.note.empty() ? "" : "; ") + s; }
  CheckRecord finish() {
    rec.digest = fnv1a(certs);
    rec.outcome = contradiction ? Outcome::Fail : open ? Outcome::Undecided : Outcome::Pass;
    return rec;
  }
};

ConeVerdict ask(Probe& p, const std::string& oracle, const LevelElement& u, const ConeOptions& opt = {}) {
  auto v = cone_member(u, opt);
  p.record(oracle, v, verify_verdict(u, v));
  return v;
}

ConeVerdict ask_cp(Probe& p, const std::string& oracle, const LinearMap& phi, const ConeOptions& opt = {}) {
  auto v = cp_check(phi, opt);
  p.record(oracle, v, verify_cp(phi, v));
  return v;
}

bool opposite(const ConeVerdict& a, const ConeVerdict& b) {
  return (a.answer == Answer::Member && b.answer == Answer::NotMember) ||
         (a.answer == Answer::NotMember && b.answer == Answer::Member);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Random self-adjoint element of M_n(S) for a self-adjoint basis.
LevelElement random_selfadjoint(const SystemPtr& s, std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  LevelElement u = zero_element(s, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t i = 0; i < s->dim; ++i) {
        const cplx c = a == b ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
        u.at(a, b)(i) = c;
        u.at(b, a)(i) = std::conj(c);
      }
  return u;
}

CMatrix random_gaussian(std::size_t r, std::size_t c, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// u + c e with min_eig of the realization equal to margin * ||u||.
LevelElement place(const LevelElement& u, const CMatrix& realized, double margin) {
  const double lo = min_eig(realized), sc = std::max(op_norm(realized), 1e-12);
  return add(u, unit_element(u.system, u.level), -lo + margin * sc);
}

LevelElement retag(LevelElement u, const SystemPtr& s) {
  u.system = s;
  return u;
}

// ---------------------------------------------------------------- duality-minmax

std::vector<Task> duality_minmax(std::uint64_t seed) {
  auto m2 = full_algebra(2);
  auto d = dual_system(m2);
  auto tmax = tensor_max(m2, m2);
  auto tmin = tensor_min(m2, m2);
  auto dtm = dual_system(tmax);
  auto mind = tensor_min(d, d);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 30; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      p.rec.id = check_id("dual-vs-min", i);
      const std::size_t n = 1 + i % 2;
      auto f = random_selfadjoint(dtm, n, rng);
      f = add(f, unit_element(dtm, n), uniform(rng, 0.0, 6.0) * static_cast<double>(n));
      const auto a = ask(p, "dual(max)", f);
      const auto b = ask(p, "min(duals)", retag(f, mind));
      if (opposite(a, b)) p.flag("dual of max and min of duals disagree");
      return p.finish();
    });
  for (std::size_t i = 0; i < 20; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, 100 + i);
      Probe p;
      p.rec.id = check_id("pairing", i);
      const CMatrix g = random_gaussian(4, 4, rng);
      const auto u = retag(element_from_realized(tmin, 1, g * g.adjoint()), tmax);
      // functional X -> tr(D X), D a perturbed density
      const CMatrix h = random_gaussian(4, 4, rng);
      CMatrix dm = h * h.adjoint();
      dm -= uniform(rng, -0.5, 0.3) * min_eig(dm) * CMatrix::Identity(4, 4);
      dm -= uniform(rng, 0.0, 0.2) * op_norm(dm) * CMatrix::Identity(4, 4);
      LevelElement f = zero_element(mind, 1);
      for (std::size_t k = 0; k < tmin->dim; ++k) f.at(0, 0)(k) = (dm * tmin->basis[k]).trace();
      const auto a = ask(p, "max", u);
      const auto b = ask(p, "min(duals)", f);
      const double pr = pairing(u, f).real();
      if (a.answer == Answer::Member && b.answer == Answer::Member &&
          pr < -1e-7 * std::max(1.0, op_norm(dm) * op_norm(g * g.adjoint())))
        p.flag("negative pairing between cone members");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- min-cp-correspondence

LinearMap map_of_tensor(const LevelElement& u, const SystemPtr& s, const SystemPtr& t) {
  LinearMap phi{dual_system(s), t, {}};
  for (std::size_t i = 0; i < s->dim; ++i) phi.images.push_back(u.at(0, 0).segment(i * t->dim, t->dim));
  return phi;
}

std::vector<Task> min_cp(std::uint64_t seed) {
  const std::vector<std::pair<SystemPtr, SystemPtr>> pairs{{diag_algebra(2), tridiagonal(3)},
                                                           {full_algebra(2), full_algebra(3)}};
  std::vector<Task> tasks;
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto [s, t] = pairs[pi];
    const auto ts = tensor_min(s, t);
    for (std::size_t i = 0; i < 50; ++i)
      tasks.push_back([=] {
        Rng rng = task_rng(seed, pi * 1000 + i);
        Probe p;
        p.rec.id = check_id(pi == 0 ? "C2xT3" : "M2xM3", i);
        const bool member = i % 2 == 0;
        auto u = random_selfadjoint(ts, 1, rng);
        const double margin = uniform(rng, 0.02, 0.5) * (member ? 1.0 : -1.0);
        u = place(u, realize(u), margin);
        ConeOptions opt;
        opt.tol = 1e-6;
        const auto a = ask(p, "min", u, opt);
        const auto b = ask_cp(p, "cp", map_of_tensor(u, s, t), opt);
        if ((a.answer == Answer::Member) != member && a.answer != Answer::Undecided)
          p.flag("spatial verdict contradicts the construction");
        if (opposite(a, b)) p.flag("min cone and cp check disagree");
        return p.finish();
      });
  }
  return tasks;
}

// ---------------------------------------------------------------- proximinality

LevelElement quotient_element(const SystemPtr& q, const CMatrix& x, std::size_t n) {
  const auto parent = q->parents[0];
  const auto up = element_from_realized(parent, n, x);
  LevelElement u = zero_element(q, n);
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) u.coeffs[k] = quotient_coords(*q, up.coeffs[k]);
  return u;
}

// Correlation matrix: PSD with unit diagonal.
CMatrix random_correlation(std::size_t d, Rng& rng) {
  const CMatrix g = random_gaussian(d, d, rng);
  CMatrix c = g * g.adjoint();
  RVector s(d);
  for (std::size_t i = 0; i < d; ++i) s(i) = 1.0 / std::sqrt(c(i, i).real());
  return s.cast<cplx>().asDiagonal() * c * s.cast<cplx>().asDiagonal();
}

std::vector<Task> proximinality(std::uint64_t seed) {
  auto q = canonical("M(3)/J(3)");
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 50; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      p.rec.id = check_id("member", i);
      const std::size_t n = 1 + i % 2, d = 3 * n;
      // rank-deficient positive part, so the witness must be exact
      const CMatrix g = random_gaussian(d, 1 + i % (d - 1), rng);
      CMatrix x = g * g.adjoint();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          const cplx c1 = a == b ? cplx(uniform(rng, -1, 1)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
          const cplx c2 = a == b ? cplx(uniform(rng, -1, 1)) : cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
          CMatrix j = CMatrix::Zero(3, 3);
          j(0, 0) = c1;
          j(1, 1) = c2 - c1;
          j(2, 2) = -c2;
          x.block(3 * a, 3 * b, 3, 3) += j;
          if (a != b) x.block(3 * b, 3 * a, 3, 3) += j.adjoint();
        }
      const auto v = ask(p, "quotient", quotient_element(q, x, n));
      if (v.answer == Answer::NotMember) p.flag("constructed member refuted");
      return p.finish();
    });
  for (std::size_t i = 0; i < 20; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, 500 + i);
      Probe p;
      p.rec.id = check_id("nonmember", i);
      const std::size_t n = 1 + i % 2, d = 3 * n;
      CMatrix w = CMatrix::Zero(d, d);
      for (int t = 0; t < 2; ++t) {
        const CMatrix a = random_gaussian(n, n, rng);
        w += kron(CMatrix(a * a.adjoint()), random_correlation(3, rng));
      }
      const CMatrix h = random_gaussian(d, d, rng);
      CMatrix x = (h + h.adjoint()) / 2.0;
      const double shift = (w * x).trace().real() / w.trace().real() + uniform(rng, 0.05, 1.0);
      x -= shift * CMatrix::Identity(d, d);
      const auto v = ask(p, "quotient", quotient_element(q, x, n));
      if (v.answer == Answer::Member) p.flag("element separated by a J-annihilating functional accepted");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- gamma-embedding

// Functional on T(3)/J(3) = S_2 whose image under gamma is the S2d matrix x:
// E_ii -> e/3 and E_{i,i+1} -> g_i/3 on the coset representatives.
CVector gamma_preimage(const OperatorSystem& q, const CMatrix& x) {
  const auto& t3 = *q.parents[0];
  CVector f(q.dim);
  for (std::size_t k = 0; k < q.dim; ++k) {
    const CMatrix r = realize(t3, CVector(q.reps.col(k).cast<cplx>()));
    f(k) = (x(0, 0) * r.trace() + x(0, 1) * r(0, 1) + x(1, 0) * r(1, 0) + x(2, 3) * r(1, 2) + x(3, 2) * r(2, 1)) / 3.0;
  }
  return f;
}

std::vector<Task> gamma_embedding(std::uint64_t seed) {
  auto s2d = canonical("S2d");
  auto q = canonical("T(3)/J(3)");
  auto dq = dual_system(q);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 100; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      p.rec.id = check_id("level" + std::to_string(1 + i % 2), i);
      const std::size_t n = 1 + i % 2;
      auto x = random_selfadjoint(s2d, n, rng);
      x = place(x, realize(x), uniform(rng, -0.4, 0.4));
      LevelElement f = zero_element(dq, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) f.at(a, b) = gamma_preimage(*q, realize(*s2d, x.at(a, b)));
      ConeOptions opt;
      opt.tol = 1e-6;
      const auto a = ask(p, "S2d-spatial", x, opt);
      const auto b = ask(p, "dual(T3/J3)", f, opt);
      if (opposite(a, b)) p.flag("gamma image and abstract dual disagree");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- coproduct-universal

std::vector<Task> coproduct_suite(std::uint64_t seed) {
  auto c2 = diag_algebra(2);
  auto m3 = full_algebra(3);
  auto cop = coproduct(c2, c2);
  std::vector<Task> tasks;
  tasks.push_back([=] {
    Probe p;
    p.rec.id = "dimension";
    if (cop->dim != 3) p.flag("dim(C2 (+)1 C2) = " + std::to_string(cop->dim));
    return p.finish();
  });
  for (std::size_t i = 0; i < 30; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      const int which = static_cast<int>(i % 2);
      const std::size_t n = 1 + (i / 2) % 3;
      p.rec.id = check_id(std::string(which ? "embed-j" : "embed-i") + "-L" + std::to_string(n), i);
      auto u = random_selfadjoint(c2, n, rng);
      u = place(u, realize(u), uniform(rng, -0.3, 0.3));
      const auto a = ask(p, "C2", u);
      const auto b = ask(p, "coproduct", ostk::apply(coproduct_embedding(cop, which), u));
      if (opposite(a, b)) p.flag("embedding changes the cone verdict");
      return p.finish();
    });
  for (std::size_t i = 0; i < 20; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, 100 + i);
      Probe p;
      p.rec.id = check_id("universal", i);
      auto ucp = [&] {
        const CMatrix u = random_gaussian(3, 3, rng).householderQr().householderQ();
        RVector dg(3);
        for (auto& x : dg) x = uniform(rng, 0.0, 1.0);
        const CMatrix pm = u * dg.cast<cplx>().asDiagonal() * u.adjoint();
        return map_from_matrices(c2, m3, {CMatrix::Identity(3, 3), CMatrix(2.0 * pm - CMatrix::Identity(3, 3))});
      };
      const auto phi = ucp();
      const auto psi = ucp();
      const auto uni = coproduct_universal(cop, phi, psi);
      const auto v = ask_cp(p, "cp(universal)", uni);
      if (v.answer == Answer::NotMember) p.flag("universal map of ucp maps is not cp");
      if (!is_unital(uni)) p.flag("universal map is not unital");
      const auto pi = compose(uni, coproduct_embedding(cop, 0));
      const auto pj = compose(uni, coproduct_embedding(cop, 1));
      for (std::size_t k = 0; k < c2->dim; ++k)
        if ((pi.images[k] - phi.images[k]).norm() > 1e-9 || (pj.images[k] - psi.images[k]).norm() > 1e-9)
          p.flag("universal map does not restrict to the given maps");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- omin-omax-duality

// (f_ab,i) of the functionals with (f_ab(E_ij))_{ab} blocks read from the
// Choi-type matrix m = sum_ab E_ab (x) D_ab^T, f_ab(X) = tr(D_ab X).
std::vector<CVector> functionals_from(const OperatorSystem& s, const CMatrix& m, std::size_t n) {
  const std::size_t d = s.ambient_dim;
  std::vector<CVector> out(n * n, CVector(s.dim));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const CMatrix dab = m.block(a * d, b * d, d, d).transpose();
      for (std::size_t i = 0; i < s.dim; ++i) out[a * n + b](i) = (dab * s.basis[i]).trace();
    }
  return out;
}

// (F_ab(u_cd)) ordered (c,a),(d,b).
CMatrix evaluate(const std::vector<CVector>& f, std::size_t n, const LevelElement& u) {
  const std::size_t m = u.level;
  CMatrix out(n * m, n * m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t dd = 0; dd < m; ++dd)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(c * n + a, dd * n + b) = f[a * n + b].dot(u.at(c, dd).conjugate());
  return out;
}

std::vector<Task> omin_omax(std::uint64_t seed, int budget) {
  auto m2 = full_algebra(2);
  auto mn = omin(m2, 1);
  auto mx = omax(m2, 1);
  ConeOptions opt;
  opt.budget = budget;
  opt.seed = seed;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 20; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      p.rec.id = check_id("pairing", i);
      auto u = random_selfadjoint(m2, 2, rng);
      u = retag(place(u, realize(u), uniform(rng, -0.2, 0.4)), mn);
      const CMatrix h = random_gaussian(4, 4, rng);
      CMatrix fm = (h + h.adjoint()) / 2.0;
      fm += (-min_eig(fm) + uniform(rng, -0.1, 0.8) * op_norm(fm)) * CMatrix::Identity(4, 4);
      const auto fx = retag(element_from_realized(m2, 2, fm), mx);
      const auto a = ask(p, "omin1", u, opt);
      const auto b = ask(p, "omax1(dual)", fx, opt);
      const CMatrix pr = hermitian_part(evaluate(functionals_from(*m2, fm, 2), 2, u));
      if (a.answer == Answer::Member && b.answer == Answer::Member &&
          min_eig(pr) < -1e-7 * std::max(1.0, op_norm(pr)))
        p.flag("cp functional on OMIN_1 maps a member outside the cone");
      return p.finish();
    });
  for (std::size_t i = 0; i < 10; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, 100 + i);
      Probe p;
      p.rec.id = check_id("chain", i);
      auto u = random_selfadjoint(m2, 2, rng);
      u = place(u, realize(u), uniform(rng, -0.3, 0.5));
      const auto a = ask(p, "omax1", retag(u, mx), opt);
      const auto b = ask(p, "M2", u, opt);
      const auto c = ask(p, "omin1", retag(u, mn), opt);
      const auto above = [](const ConeVerdict& lo, const ConeVerdict& hi) {
        return lo.answer == Answer::Member && hi.answer == Answer::NotMember;
      };
      if (above(a, b) || above(a, c) || above(b, c)) p.flag("cone inclusion OMAX_1 <= M2 <= OMIN_1 violated");
      return p.finish();
    });
  for (std::size_t i = 0; i < 10; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, 200 + i);
      Probe p;
      p.rec.id = check_id("level1", i);
      auto u = random_selfadjoint(m2, 1, rng);
      u = place(u, realize(u), uniform(rng, -0.3, 0.3));
      const auto a = ask(p, "omax1", retag(u, mx), opt);
      const auto b = ask(p, "M2", u, opt);
      const auto c = ask(p, "omin1", retag(u, mn), opt);
      if (opposite(a, b) || opposite(b, c)) p.flag("structures differ at level 1");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- nuclearity-matrix-algebras

std::vector<Task> nuclearity(std::uint64_t seed) {
  auto m2 = full_algebra(2);
  auto tmin = tensor_min(m2, m2);
  auto tmax = tensor_max(m2, m2);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 120; ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      const bool psd = i < 100;
      p.rec.id = check_id(psd ? "psd" : "indefinite", i);
      const CMatrix g = random_gaussian(4, 4, rng);
      CMatrix x = g * g.adjoint();
      if (!psd) x -= uniform(rng, 0.05, 0.5) * op_norm(x) * CMatrix::Identity(4, 4) + min_eig(x) * CMatrix::Identity(4, 4);
      const auto u = retag(element_from_realized(tmin, 1, x), tmax);
      ConeOptions forced;
      forced.force_hierarchy = true;
      forced.hier_level = 2;
      forced.seed = seed;
      const auto h = ask(p, "max-hierarchy", u, forced);
      const auto e = ask(p, "max-exact", u);
      const bool spatial = min_eig(x) >= -1e-8 * op_norm(x);
      if (spatial && h.answer == Answer::NotMember) p.flag("hierarchy refutes a positive element");
      if (!spatial && h.answer == Answer::Member) p.flag("hierarchy accepts an indefinite element");
      if (e.answer != (spatial ? Answer::Member : Answer::NotMember)) p.flag("exact path disagrees with spatial PSD");
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- kc-gap-search

std::vector<Task> kc_gap(std::uint64_t seed, int budget) {
  auto s2d = canonical("S2d");
  auto tmin = tensor_min(s2d, s2d);
  auto tmax = tensor_max(s2d, s2d);
  ConeOptions opt;
  opt.budget = std::max(1, std::min(budget, 4));
  opt.seed = seed;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < static_cast<std::size_t>(std::max(1, budget)); ++i)
    tasks.push_back([=] {
      Rng rng = task_rng(seed, i);
      Probe p;
      p.rec.id = check_id("direction", i);
      const auto h = random_selfadjoint(tmin, 1, rng);
      const CMatrix r = realize(h);
      for (double margin : {-0.05, 0.1, 0.5}) {
        const auto u = place(h, r, margin);
        const auto a = ask(p, "min@" + std::to_string(margin), u, opt);
        const auto b = ask(p, "max@" + std::to_string(margin), retag(u, tmax), opt);
        if (a.answer == Answer::NotMember && b.answer == Answer::Member) p.flag("max cone exceeds min cone");
        if (a.answer == Answer::Member && b.answer == Answer::NotMember) p.note("certified min/max separation");
      }
      return p.finish();
    });
  return tasks;
}

// ---------------------------------------------------------------- runner

using Builder = std::function<std::vector<Task>(std::uint64_t, int)>;

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> r{
      {"duality-minmax", [](std::uint64_t s, int) { return duality_minmax(s); }},
      {"min-cp-correspondence", [](std::uint64_t s, int) { return min_cp(s); }},
      {"proximinality", [](std::uint64_t s, int) { return proximinality(s); }},
      {"gamma-embedding", [](std::uint64_t s, int) { return gamma_embedding(s); }},
      {"coproduct-universal", [](std::uint64_t s, int) { return coproduct_suite(s); }},
      {"omin-omax-duality", omin_omax},
      {"nuclearity-matrix-algebras", [](std::uint64_t s, int) { return nuclearity(s); }},
      {"kc-gap-search", kc_gap},
  };
  return r;
}

std::size_t worker_count(std::size_t tasks) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OSTK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"duality-minmax",      "min-cp-correspondence", "proximinality",
          "gamma-embedding",     "coproduct-universal",   "omin-omax-duality",
          "nuclearity-matrix-algebras", "kc-gap-search"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int budget) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unknown suite '" + name + "'");
  const auto tasks = it->second(seed, budget);
  SuiteReport rep;
  rep.suite = name;
  rep.seed = seed;
  rep.budget = budget;
  rep.checks.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        rep.checks[i] = tasks[i]();
      } catch (const std::exception& e) {
        rep.checks[i].id = check_id("task", i);
        rep.checks[i].outcome = Outcome::Fail;
        rep.checks[i].note = std::string("exception: ") + e.what();
      }
      rep.checks[i].elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const std::size_t nw = worker_count(tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (const auto& c : rep.checks) {
    if (c.outcome == Outcome::Pass) ++rep.passed;
    if (c.outcome == Outcome::Fail) ++rep.failed;
    if (c.outcome == Outcome::Undecided) ++rep.undecided;
  }
  rep.status = rep.failed ? Outcome::Fail : rep.undecided ? Outcome::Undecided : Outcome::Pass;
  return rep;
}

Json to_json(const SuiteReport& r, bool timing) {
  Json j;
  j["format"] = kFormatVersion;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["status"] = to_string(r.status);
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["undecided"] = r.undecided;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["outcome"] = to_string(c.outcome);
    Json vs = Json::array();
    for (const auto& v : c.verdicts) {
      Json vj;
      vj["oracle"] = v.oracle;
      vj["answer"] = to_string(v.answer);
      vj["route"] = v.route;
      vs.push_back(std::move(vj));
    }
    cj["verdicts"] = std::move(vs);
    cj["certificates_digest"] = c.digest;
    if (timing) cj["elapsed"] = c.elapsed;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace ostk
