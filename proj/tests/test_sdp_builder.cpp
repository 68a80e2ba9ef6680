#include <doctest.h>

#include "helpers.hpp"
#include "ostk/sdp_builder.hpp"

using namespace ostk;
using namespace testutil;

TEST_CASE("complex PSD completion") {
  SdpBuilder b;
  const auto x = b.add_psd(2);
  b.add_eq({{x, unit_matrix(2, 0, 0)}}, {}, 1.0);
  // tr(E_21 X) = X_12 = i
  b.add_complex_eq({{x, unit_matrix(2, 1, 0)}}, cplx(0.0, 1.0));
  b.set_objective({{x, CMatrix::Identity(2, 2)}}, {});
  const auto r = b.solve();
  REQUIRE(r.feasible);
  CHECK(r.raw.objective == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(std::abs(r.psd[0](0, 1) - cplx(0.0, 1.0)) < 1e-6);
  CHECK(b.residual(r.psd, r.scalars) < 1e-7);
}

TEST_CASE("complex infeasibility certificate") {
  SdpBuilder b;
  const auto x = b.add_psd(2);
  b.add_eq({{x, unit_matrix(2, 0, 0)}}, {}, 0.0);
  b.add_complex_eq({{x, unit_matrix(2, 1, 0)}}, cplx(0.0, 1.0));
  const auto r = b.feasibility();
  CHECK_FALSE(r.feasible);
  REQUIRE(r.infeasible);
  CHECK(b.farkas_violation(r.dual) < 1e-6);
}

TEST_CASE("free scalars and affine membership") {
  std::mt19937_64 rng(3);
  SdpBuilder b;
  const auto x = b.add_psd(3);
  const auto t = b.add_scalar(false);
  // X in I + span{E11 - E22}: X = diag(1+s, 1-s, 1).
  CMatrix dir = unit_matrix(3, 0, 0) - unit_matrix(3, 1, 1);
  b.add_affine(x, CMatrix::Identity(3, 3), {dir});
  // t = X_11 - 3 ; maximize X_11 => minimize -X_11.
  b.add_eq({{x, unit_matrix(3, 0, 0)}}, {{t, -1.0}}, 3.0);
  b.set_objective({{x, CMatrix(-unit_matrix(3, 0, 0))}}, {});
  const auto r = b.solve();
  REQUIRE(r.feasible);
  CHECK(r.psd[0](0, 0).real() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.scalars[0] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("complex solutions agree with the real embedding on random instances") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    SdpBuilder b;
    const auto x = b.add_psd(3);
    const CMatrix x0 = random_psd(3, rng, 1);
    for (int i = 0; i < 4; ++i) {
      const CMatrix m = random_complex(3, 3, rng);
      b.add_complex_eq({{x, m}}, (m * x0).trace());
    }
    const auto r = b.feasibility();
    REQUIRE(r.feasible);
    CHECK(b.residual(r.psd, r.scalars) < 1e-7);
    CHECK(min_eig(r.psd[0]) > -1e-7);
  }
}
