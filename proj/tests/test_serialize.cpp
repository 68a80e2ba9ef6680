#include <doctest.h>

#include "helpers.hpp"
#include "ostk/atlas.hpp"
#include "ostk/dualize.hpp"
#include "ostk/matricial.hpp"
#include "ostk/serialize.hpp"
#include "ostk/tensor.hpp"

using namespace ostk;
using namespace testutil;

namespace {

void round_trip(const SystemPtr& s) {
  const std::string a = dump(to_json(*s));
  const auto back = system_from_json(parse_json(a));
  CHECK(back->kind == s->kind);
  CHECK(back->dim == s->dim);
  CHECK(back->name == s->name);
  CHECK(dump(to_json(*back)) == a);
}

}  // namespace

TEST_CASE("system JSON round trips are exact for every kind") {
  auto m2 = full_algebra(2);
  auto t3 = tridiagonal(3);
  round_trip(m2);
  round_trip(t3);
  round_trip(snd(2));
  round_trip(dual_system(t3));
  round_trip(dual_system(dual_system(m2)));
  round_trip(canonical("T(3)/J(3)"));
  round_trip(coproduct(m2, diag_algebra(2)));
  round_trip(tensor_min(m2, diag_algebra(2)));
  round_trip(tensor_max(dual_system(m2), m2));
  round_trip(omin(m2, 1));
  round_trip(omax(t3, 2));
}

TEST_CASE("element and map round trips") {
  auto t3 = tridiagonal(3);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  LevelElement u = zero_element(t3, 2);
  for (auto& c : u.coeffs)
    for (auto& x : c) x = cplx(g(rng), g(rng));
  const std::string a = dump(to_json(u));
  const auto v = element_from_json(parse_json(a), t3);
  CHECK(dump(to_json(v)) == a);

  const CMatrix k = random_complex(2, 3, rng);
  std::vector<CMatrix> imgs;
  for (const auto& b : t3->basis) imgs.push_back(k * b * k.adjoint());
  const auto phi = map_from_matrices(t3, full_algebra(2), imgs);
  const std::string pm = dump(to_json(phi));
  CHECK(dump(to_json(map_from_json(parse_json(pm)))) == pm);

  Json rj;
  rj["level"] = 1;
  rj["realized"] = to_json(realize(*t3, u.at(0, 0)));
  const auto w = element_from_json(rj, t3);
  CHECK((w.at(0, 0) - u.at(0, 0)).norm() < 1e-10);
}

TEST_CASE("malformed input reports line and column") {
  try {
    parse_json("{\n  \"a\": [1, 2,\n  }\n", "x.json");
    FAIL("no throw");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).rfind("x.json:3:", 0) == 0);
  }
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"kind":"bogus"})")), InputError);
  CHECK_THROWS_AS(element_from_json(parse_json(R"({"level":1,"coeffs":[[[1]]]})"), full_algebra(2)), InputError);
}
