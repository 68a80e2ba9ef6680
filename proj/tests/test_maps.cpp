#include <doctest.h>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/maps.hpp"

using namespace ostk;
using namespace testutil;

namespace {

std::vector<CMatrix> kraus_images(const OperatorSystem& s, const std::vector<CMatrix>& kraus) {
  std::vector<CMatrix> out;
  for (const auto& b : s.basis) {
    CMatrix m = CMatrix::Zero(kraus[0].rows(), kraus[0].rows());
    for (const auto& k : kraus) m += k * b * k.adjoint();
    out.push_back(m);
  }
  return out;
}

std::vector<CMatrix> random_kraus(std::size_t q, std::size_t d, std::size_t r, std::mt19937_64& rng) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(random_complex(q, d, rng));
  return out;
}

LinearMap transpose_map(const SystemPtr& m) {
  std::vector<CMatrix> im;
  for (const auto& b : m->basis) im.push_back(b.transpose());
  return map_from_matrices(m, m, im);
}

}  // namespace

TEST_CASE("cp_check: identity, transpose, compression") {
  auto m2 = full_algebra(2);
  auto id = map_from_matrices(m2, m2, m2->basis);
  CHECK(cp_check(id).answer == Answer::Member);
  auto tv = cp_check(transpose_map(m2));
  CHECK(tv.answer == Answer::NotMember);
  CHECK(tv.cert.value == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK((choi_matrix(*m2, image_matrices(transpose_map(m2))) - swap_operator(2)).norm() < 1e-12);

  auto m3 = full_algebra(3);
  std::vector<CMatrix> corner;
  for (const auto& b : m3->basis) corner.push_back(b.topLeftCorner(2, 2));
  CHECK(cp_check(map_from_matrices(m3, m2, corner)).answer == Answer::Member);
}

TEST_CASE("cp_check on random Kraus maps from subsystems") {
  std::mt19937_64 rng(11);
  auto t3 = tridiagonal(3);
  auto m2 = full_algebra(2);
  for (int s = 0; s < 5; ++s) {
    const auto imgs = kraus_images(*t3, random_kraus(2, 3, 2, rng));
    CHECK(cp_check(map_from_matrices(t3, m2, imgs)).answer == Answer::Member);
  }
}

TEST_CASE("cp_check: positive but not cp map on a subsystem") {
  // Transpose restricted to T3 stays positive; on the diagonal it is the identity.
  auto t3 = tridiagonal(3);
  auto m3 = full_algebra(3);
  std::vector<CMatrix> im;
  for (const auto& b : t3->basis) im.push_back(b.transpose());
  const auto v = cp_check(map_from_matrices(t3, m3, im));
  CHECK(v.answer == Answer::NotMember);
}

TEST_CASE("kpos_refute on transpose") {
  auto m2 = full_algebra(2);
  ConeOptions opt;
  const auto k2 = kpos_refute(transpose_map(m2), 2, opt);
  CHECK(k2.answer == Answer::NotMember);
  CHECK(k2.cert.value < -1e-8);
  const auto k1 = kpos_refute(transpose_map(m2), 1, opt);
  CHECK(k1.answer == Answer::Undecided);
}

TEST_CASE("kpos_refute never refutes cp maps") {
  std::mt19937_64 rng(8);
  auto m2 = full_algebra(2);
  for (int s = 0; s < 3; ++s) {
    auto phi = map_from_matrices(m2, m2, kraus_images(*m2, random_kraus(2, 2, 2, rng)));
    CHECK(kpos_refute(phi, 2).answer != Answer::NotMember);
  }
}

TEST_CASE("unitalize") {
  auto m2 = full_algebra(2);
  std::vector<CMatrix> twice;
  for (const auto& b : m2->basis) twice.push_back(2.0 * b);
  const auto u = unitalize(map_from_matrices(m2, m2, twice));
  CHECK(is_unital(u.psi));
  for (std::size_t i = 0; i < m2->dim; ++i)
    CHECK((image_matrices(u.psi)[i] - m2->basis[i]).norm() < 1e-10);

  std::mt19937_64 rng(9);
  auto phi = map_from_matrices(m2, m2, kraus_images(*m2, random_kraus(2, 2, 3, rng)));
  const auto r = unitalize(phi);
  CHECK(is_unital(r.psi, 1e-9));
  CHECK(cp_check(r.psi).answer == Answer::Member);
  const auto back = image_matrices(r.psi);
  const auto orig = image_matrices(phi);
  for (std::size_t i = 0; i < m2->dim; ++i) CHECK((r.r * back[i] * r.r - orig[i]).norm() < 1e-9);

  std::vector<CMatrix> sing(m2->dim, CMatrix::Zero(2, 2));
  CHECK_THROWS_AS(unitalize(map_from_matrices(m2, m2, sing)), InputError);
}
