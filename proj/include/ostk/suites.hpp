#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ostk/serialize.hpp"

namespace ostk {

enum class Outcome { Pass, Fail, Undecided };
const char* to_string(Outcome o);

struct OracleAnswer {
  std::string oracle;
  Answer answer = Answer::Undecided;
  std::string route;
};

struct CheckRecord {
  std::string id;
  std::vector<OracleAnswer> verdicts;
  /// FNV-1a digest of the serialized certificates.
  std::string digest;
  double elapsed = 0.0;
  Outcome outcome = Outcome::Pass;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 1;
  int budget = 8;
  std::vector<CheckRecord> checks;
  int passed = 0;
  int failed = 0;
  int undecided = 0;
  Outcome status = Outcome::Pass;
};

std::vector<std::string> suite_names();

/// Checks run concurrently (OSTK_THREADS caps the worker count) and are
/// collected in check-id order; everything except elapsed times depends only
/// on (seed, budget).
SuiteReport run_suite(const std::string& name, std::uint64_t seed = 1, int budget = 8);

Json to_json(const SuiteReport& r, bool timing = true);

}  // namespace ostk
