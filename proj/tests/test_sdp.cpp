#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "ostk/sdp.hpp"

using namespace ostk;
using namespace testutil;
namespace sdp = ostk::sdp;

namespace {

RMatrix e(std::size_t n, std::size_t i, std::size_t j) {
  RMatrix m = RMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

RMatrix esym(std::size_t n, std::size_t i, std::size_t j) {
  RMatrix m = e(n, i, j);
  m(j, i) = 1.0;
  return m;
}

// Feasible by construction: b = A(X0) for a PSD X0.
sdp::Problem random_feasible(std::mt19937_64& rng, std::size_t n, std::size_t m, bool with_objective) {
  sdp::Problem p;
  p.blocks = {n};
  const RMatrix x0 = random_real_psd(n, rng, std::max<std::size_t>(1, n / 2));
  for (std::size_t i = 0; i < m; ++i) {
    const RMatrix a = random_sym(n, rng);
    p.constraints.push_back({{{0, a}}, a.cwiseProduct(x0).sum()});
  }
  if (with_objective) {
    // C PSD plus shift keeps the dual strictly feasible so the optimum is attained.
    p.objective = {random_real_psd(n, rng) + RMatrix::Identity(n, n)};
  }
  return p;
}

sdp::Problem random_infeasible(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  sdp::Problem p;
  p.blocks = {n};
  std::normal_distribution<double> g(0.0, 1.0);
  RVector y(m);
  for (std::size_t i = 0; i < m; ++i) y(i) = g(rng);
  y(m - 1) = 1.0;
  RMatrix acc = random_real_psd(n, rng) + 0.1 * RMatrix::Identity(n, n);
  std::vector<RMatrix> as;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    as.push_back(random_sym(n, rng));
    acc += y(i) * as.back();
  }
  as.push_back(-acc);  // sum y_i A_i = -P
  double by = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double bi = g(rng);
    p.constraints.push_back({{{0, as[i]}}, bi});
    by += y(i) * bi;
  }
  // Shift the last rhs so that b'y = 1 > 0.
  p.constraints.back().rhs += (1.0 - by);
  return p;
}

}  // namespace

TEST_CASE("trace minimization with a pinned corner") {
  sdp::Problem p;
  p.blocks = {2};
  p.objective = {RMatrix::Identity(2, 2)};
  p.constraints.push_back({{{0, e(2, 0, 0)}}, 1.0});
  const auto s = sdp::solve(p);
  REQUIRE(s.status == sdp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK((s.primal[0] - e(2, 0, 0)).norm() < 1e-6);
}

TEST_CASE("negative trace is infeasible") {
  sdp::Problem p;
  p.blocks = {2};
  p.constraints.push_back({{{0, RMatrix::Identity(2, 2)}}, -1.0});
  const auto s = sdp::solve(p);
  REQUIRE(s.status == sdp::Status::Infeasible);
  REQUIRE(s.farkas.has_value());
  CHECK(sdp::farkas_violation(p, *s.farkas) <= 1e-7);
}

TEST_CASE("linear objective over density matrices matches angular grid") {
  sdp::Problem p;
  p.blocks = {2};
  RMatrix c(2, 2);
  c << 1, 0, 0, -1;
  p.objective = {c};
  p.constraints.push_back({{{0, RMatrix::Identity(2, 2)}}, 1.0});
  const auto s = sdp::solve(p);
  REQUIRE(s.status == sdp::Status::Optimal);
  double best = 1e9;
  for (int k = 0; k <= 3600; ++k) {
    const double th = M_PI * k / 3600.0;
    RVector v(2);
    v << std::cos(th), std::sin(th);
    best = std::min(best, v.dot(c * v));
  }
  CHECK(s.objective == doctest::Approx(best).epsilon(1e-6));
  CHECK(std::abs(s.primal[0](1, 1) - 1.0) < 1e-6);
}

TEST_CASE("feasibility examples") {
  sdp::Problem p;
  p.blocks = {2};
  p.constraints.push_back({{{0, e(2, 0, 0)}}, 0.0});
  p.constraints.push_back({{{0, esym(2, 0, 1)}}, 2.0});  // X12 = 1
  const auto f = sdp::feasibility(p);
  CHECK_FALSE(f.feasible);
  CHECK(f.infeasible);
  if (f.certificate) CHECK(sdp::farkas_violation(p, *f.certificate) <= 1e-6);

  sdp::Problem q;
  q.blocks = {3};
  q.constraints.push_back({{{0, RMatrix::Identity(3, 3)}}, 1.0});
  const auto g = sdp::feasibility(q);
  REQUIRE(g.feasible);
  CHECK((g.witness[0] - RMatrix::Identity(3, 3) / 3.0).norm() < 1e-6);
}

TEST_CASE("construct-then-recover feasibility") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_feasible(rng, 6, 8, false);
    const auto f = sdp::feasibility(p);
    REQUIRE(f.feasible);
    CHECK(sdp::constraint_residual(p, f.witness) <= 1e-7);
    CHECK(sdp::min_block_eig(f.witness) >= -1e-7);
  }
}

TEST_CASE("optimal solutions satisfy weak duality and re-verify") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_feasible(rng, 5, 6, true);
    const auto s = sdp::solve(p);
    REQUIRE(s.status == sdp::Status::Optimal);
    CHECK(s.objective >= s.dual_objective - 1e-7 * (1.0 + std::abs(s.objective)));
    CHECK(s.residuals.gap <= 1e-7);
    CHECK(sdp::constraint_residual(p, s.primal) <= 1e-7);
    CHECK(sdp::min_block_eig(s.primal) >= -1e-7);
  }
}

TEST_CASE("constructed infeasible instances give Farkas certificates") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_infeasible(rng, 4, 5);
    const auto s = sdp::solve(p);
    REQUIRE(s.status == sdp::Status::Infeasible);
    REQUIRE(s.farkas.has_value());
    CHECK(sdp::farkas_violation(p, *s.farkas) <= 1e-7);
  }
}

TEST_CASE("dependent constraints are handled") {
  sdp::Problem p;
  p.blocks = {2};
  p.objective = {RMatrix::Identity(2, 2)};
  p.constraints.push_back({{{0, e(2, 0, 0)}}, 1.0});
  p.constraints.push_back({{{0, 2.0 * e(2, 0, 0)}}, 2.0});
  const auto s = sdp::solve(p);
  CHECK(s.status == sdp::Status::Optimal);
  p.constraints.back().rhs = 3.0;
  const auto t = sdp::solve(p);
  REQUIRE(t.status == sdp::Status::Infeasible);
  CHECK(sdp::farkas_violation(p, *t.farkas) <= 1e-12);
}

TEST_CASE("multiple blocks and unbounded detection") {
  sdp::Problem p;
  p.blocks = {2, 1};
  p.objective = {RMatrix::Identity(2, 2), -RMatrix::Identity(1, 1)};
  p.constraints.push_back({{{0, RMatrix::Identity(2, 2)}}, 1.0});
  const auto s = sdp::solve(p);
  CHECK(s.status == sdp::Status::Unbounded);
}

TEST_CASE("solve is deterministic and respects the dimension cap") {
  std::mt19937_64 rng(41);
  const auto p = random_feasible(rng, 4, 5, true);
  const auto a = sdp::solve(p), b = sdp::solve(p);
  CHECK(a.objective == b.objective);
  CHECK(a.primal[0] == b.primal[0]);
  sdp::Options opt;
  opt.max_dim = 3;
  CHECK_THROWS_AS(sdp::solve(p, opt), InputError);
}

TEST_CASE("text dump lists blocks and constraints") {
  sdp::Problem p;
  p.blocks = {1};
  p.constraints.push_back({{{0, RMatrix::Identity(1, 1)}}, 1.0});
  std::ostringstream os;
  sdp::write_text(os, p);
  CHECK(os.str().find("blocks 1") == 0);
  CHECK(os.str().find("constraints 1") != std::string::npos);
}
