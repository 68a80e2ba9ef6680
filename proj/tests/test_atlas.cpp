#include <doctest.h>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/cones.hpp"
#include "ostk/maps.hpp"
#include "ostk/quotient.hpp"

using namespace ostk;
using namespace testutil;

TEST_CASE("canonical names") {
  CHECK(canonical("full(3)")->dim == 9);
  CHECK(canonical("M(2)")->dim == 4);
  CHECK(canonical("diag(4)")->dim == 4);
  CHECK(canonical("T(3)")->dim == 7);
  CHECK(canonical("M(3)/J(3)")->dim == 7);
  CHECK(canonical("T(3)/J(3)")->dim == 5);
  CHECK(canonical("S2d")->dim == 5);
  CHECK(canonical("Snd(3)")->dim == 7);
  CHECK_THROWS_AS(canonical("full(0)"), InputError);
  CHECK_THROWS_AS(canonical("full(65)"), InputError);
  CHECK_THROWS_AS(canonical("nonsense"), InputError);
  CHECK_THROWS_AS(canonical("M(3)/J(2)"), InputError);
}

TEST_CASE("tridiagonal basis is Hermitian and banded") {
  auto t4 = tridiagonal(4);
  CHECK(t4->dim == 10);
  for (const auto& b : t4->basis) {
    CHECK(hermitian_defect(b) < 1e-14);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j)
        if (std::abs(i - j) >= 2) CHECK(std::abs(b(i, j)) == 0.0);
  }
}

TEST_CASE("snd generators") {
  auto s = snd(2);
  const auto g = gamma_images(2);
  REQUIRE(g.size() == 5);
  CHECK((g[0] - CMatrix::Identity(4, 4)).norm() < 1e-14);
  CMatrix e1 = CMatrix::Zero(4, 4);
  e1(0, 1) = 1.0;
  CHECK((g[1] - e1).norm() < 1e-14);
  CHECK((g[2] - e1.adjoint()).norm() < 1e-14);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK((realize(*s, snd_generator(2, i, false)) - g[1 + 2 * i]).norm() < 1e-14);
    CHECK((realize(*s, snd_generator(2, i, true)) - g[2 + 2 * i]).norm() < 1e-14);
  }
}

TEST_CASE("e_1 is a contraction of norm one in S2d") {
  auto s = snd(2);
  const auto e = level1(s, snd_generator(2, 0, false));
  CHECK(os_norm(e).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(os_norm(unit_element(s, 1)).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("J_n is null in M_n and T_n") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto t = tridiagonal(n);
    const auto j = Subspace{t, traceless_diagonal_kernel(*t)};
    CHECK(is_null_subspace(j).answer == Answer::Member);
  }
}
