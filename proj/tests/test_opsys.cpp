#include <doctest.h>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/opsys.hpp"

using namespace ostk;
using namespace testutil;

TEST_CASE("make_concrete basics") {
  auto c2 = make_concrete("C2", 2, {CMatrix::Identity(2, 2), CMatrix(unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1))});
  CHECK(c2->dim == 2);
  CHECK(c2->faithful_state(0) == doctest::Approx(1.0));
  CHECK(c2->faithful_state(1) == doctest::Approx(0.0));
  CHECK(tridiagonal(3)->dim == 7);
  CHECK_THROWS_AS(make_concrete("bad", 2, {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}), InputError);
  CMatrix nh = unit_matrix(2, 0, 1);
  CHECK_THROWS_AS(make_concrete("bad", 2, {CMatrix::Identity(2, 2), nh}), InputError);
}

TEST_CASE("identity is prepended with a warning") {
  auto s = make_concrete("x", 2, {CMatrix(unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1))});
  CHECK(s->dim == 2);
  CHECK(!s->warnings.empty());
  CHECK((s->basis[0] - CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("spatial cone on concrete systems") {
  auto c2 = diag_algebra(2);
  CVector c(2);
  c << 0.0, 1.0;  // diag(1,-1)
  auto v = spatial_cone_member(level1(c2, c), 1e-8);
  CHECK(v.answer == Answer::NotMember);
  CHECK(v.cert.value == doctest::Approx(-1.0));
  CHECK(spatial_cone_member(unit_element(c2, 1), 1e-8).answer == Answer::Member);

  auto m2 = full_algebra(2);
  auto sw = element_from_realized(m2, 2, swap_operator(2));
  CHECK((realize(sw) - swap_operator(2)).norm() < 1e-12);
  auto vs = spatial_cone_member(sw, 1e-8);
  CHECK(vs.answer == Answer::NotMember);
  CHECK(vs.cert.value == doctest::Approx(-1.0).epsilon(1e-10));
  const CVector w = vs.cert.vector;
  CHECK((w.adjoint() * swap_operator(2) * w)(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("cone oracle matches eigenvalue oracle on T3") {
  std::mt19937_64 rng(5);
  auto t3 = tridiagonal(3);
  for (int s = 0; s < 30; ++s) {
    const std::size_t n = 1 + s % 2;
    LevelElement u = zero_element(t3, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        CVector c = random_complex(7, 1, rng).col(0);
        if (a == b) c = c.real().cast<cplx>();
        u.at(a, b) = c;
        if (a != b) u.at(b, a) = c.conjugate();
      }
    const auto ev = herm_eigenvalues_oracle(realize(u));
    const auto v = spatial_cone_member(u, 1e-8);
    CHECK((v.answer == Answer::Member) == (ev.front() >= -1e-8));
    CHECK(v.cert.value == doctest::Approx(ev.front()).epsilon(1e-8));
  }
}

TEST_CASE("coordinates and level bases") {
  auto t3 = tridiagonal(3);
  std::mt19937_64 rng(2);
  CVector c = random_complex(7, 1, rng).col(0);
  const auto back = coordinates(*t3, realize(*t3, c));
  CHECK((back.coeffs - c).norm() < 1e-12);
  CHECK(back.residual < 1e-12);
  CHECK(coordinates(*t3, unit_matrix(3, 0, 2)).residual > 0.5);
  const auto dual = hs_dual_basis(*t3);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      CHECK(std::abs(hs_inner(dual[i], t3->basis[j]) - cplx(i == j ? 1.0 : 0.0)) < 1e-12);
  CHECK(level_herm_basis(*t3, 2).size() == 28);
}

TEST_CASE("pairing is bilinear and real on Hermitian pairs") {
  auto m2 = full_algebra(2);
  std::mt19937_64 rng(3);
  auto u = element_from_realized(m2, 2, random_herm(4, rng));
  auto f = element_from_realized(m2, 2, random_herm(4, rng));
  CHECK(std::abs(pairing(u, f).imag()) < 1e-12);
  auto u2 = scale(u, cplx(2.0, 0.0));
  CHECK(std::abs(pairing(u2, f) - 2.0 * pairing(u, f)) < 1e-12);
}

TEST_CASE("maps: unital, apply, compose") {
  auto m2 = full_algebra(2);
  std::vector<CMatrix> id = m2->basis;
  auto phi = map_from_matrices(m2, m2, id);
  CHECK(is_unital(phi));
  auto twice = compose(phi, phi);
  for (std::size_t i = 0; i < m2->dim; ++i) CHECK((twice.images[i] - phi.images[i]).norm() < 1e-12);
  std::mt19937_64 rng(4);
  auto u = element_from_realized(m2, 2, random_herm(4, rng));
  CHECK((realize(apply(phi, u)) - realize(u)).norm() < 1e-12);
}
