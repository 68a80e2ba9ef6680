#include <doctest.h>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/cones.hpp"
#include "ostk/dualize.hpp"
#include "ostk/maps.hpp"

using namespace ostk;
using namespace testutil;

namespace {

// Coefficients of X -> tr(H X) in the basis dual to s.
CVector functional_of(const OperatorSystem& s, const CMatrix& h) {
  CVector f(s.dim);
  for (std::size_t k = 0; k < s.dim; ++k) f(k) = (h * s.basis[k]).trace();
  return f;
}

LevelElement random_herm_element(const SystemPtr& s, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  LevelElement u = zero_element(s, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t i = 0; i < s->dim; ++i) {
        const cplx c = a == b ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
        u.at(a, b)(i) = c;
        u.at(b, a)(i) = std::conj(c);
      }
  // shift toward the cone so both answers occur
  return add(u, unit_element(s, n), 1.5 * static_cast<double>(n));
}

}  // namespace

TEST_CASE("dual of M2: level-1 cone is PSD of the pairing matrix") {
  auto m2 = full_algebra(2);
  auto d = dual_system(m2);
  CHECK(d->dim == 4);
  std::mt19937_64 rng(3);
  int members = 0;
  for (int s = 0; s < 100; ++s) {
    const CMatrix h = random_herm(2, rng) + 0.8 * CMatrix::Identity(2, 2);
    const auto f = level1(d, functional_of(*m2, h));
    const auto v = cone_member(f);
    const bool psd = herm_eigenvalues_oracle(h).front() >= 0.0;
    members += psd;
    CHECK((v.answer == Answer::Member) == psd);
    CHECK(verify_verdict(f, v));
  }
  CHECK(members > 10);
  CHECK(members < 90);
}

TEST_CASE("dual unit and faithful state") {
  auto t3 = tridiagonal(3);
  auto d = dual_system(t3);
  CHECK((d->unit - t3->faithful_state.cast<cplx>()).norm() < 1e-12);
  CHECK((d->faithful_state - t3->unit.real()).norm() < 1e-12);
  // the unit of the dual is a faithful state: strictly positive at level 1
  CHECK(cone_member(unit_element(d, 1)).answer == Answer::Member);
}

TEST_CASE("double dual cones agree with the original") {
  auto t3 = tridiagonal(3);
  auto dd = dual_system(dual_system(t3));
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 2; ++n)
    for (int s = 0; s < 10; ++s) {
      const auto u = random_herm_element(t3, n, rng);
      LevelElement w = u;
      w.system = dd;
      const auto a = cone_member(u);
      const auto b = cone_member(w);
      CHECK(a.answer == b.answer);
      CHECK(verify_verdict(w, b));
    }
}

TEST_CASE("dual maps: cp passes to the dual, transpose does not") {
  auto m2 = full_algebra(2);
  auto m3 = full_algebra(3);
  std::mt19937_64 rng(9);
  std::vector<CMatrix> kraus{random_complex(2, 3, rng), random_complex(2, 3, rng)};
  std::vector<CMatrix> imgs;
  for (const auto& b : m3->basis) {
    CMatrix m = CMatrix::Zero(2, 2);
    for (const auto& k : kraus) m += k * b * k.adjoint();
    imgs.push_back(m);
  }
  const auto phi = map_from_matrices(m3, m2, imgs);
  const auto pd = dual_map(phi);
  CHECK(pd.source->parents[0] == m2);
  CHECK(pd.target->parents[0] == m3);
  const auto v = cp_check(pd);
  CHECK(v.answer == Answer::Member);

  std::vector<CMatrix> tr;
  for (const auto& b : m2->basis) tr.push_back(b.transpose());
  CHECK(cp_check(dual_map(map_from_matrices(m2, m2, tr))).answer == Answer::NotMember);
}

TEST_CASE("dual map pairing identity") {
  auto t3 = tridiagonal(3);
  auto m2 = full_algebra(2);
  std::mt19937_64 rng(21);
  const CMatrix k = random_complex(2, 3, rng);
  std::vector<CMatrix> imgs;
  for (const auto& b : t3->basis) imgs.push_back(k * b * k.adjoint());
  const auto phi = map_from_matrices(t3, m2, imgs);
  const auto pd = dual_map(phi);
  std::normal_distribution<double> g;
  for (int s = 0; s < 5; ++s) {
    CVector x(t3->dim), f(m2->dim);
    for (auto& c : x) c = g(rng);
    for (auto& c : f) c = g(rng);
    // <phi(x), f> = <x, phi^d(f)>
    const cplx lhs = pairing(level1(m2, ostk::apply(phi, x)), level1(pd.source, f));
    const cplx rhs = pairing(level1(t3, x), level1(pd.target, ostk::apply(pd, f)));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}
