#include <doctest.h>

#include "ostk/suites.hpp"

using namespace ostk;

TEST_CASE("suite reports are reproducible from the seed") {
  for (const char* name : {"proximinality", "omin-omax-duality", "coproduct-universal"}) {
    const auto a = run_suite(name, 7, 4);
    const auto b = run_suite(name, 7, 4);
    CHECK(a.failed == 0);
    CHECK(dump(to_json(a, false)) == dump(to_json(b, false)));
    const auto c = run_suite(name, 8, 4);
    CHECK(dump(to_json(a, false)) != dump(to_json(c, false)));
  }
}

TEST_CASE("registered suites") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("no-such-suite"), InputError);
}
