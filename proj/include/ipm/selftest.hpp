#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipm/core_text.hpp"

namespace ipm {

struct SelftestOptions {
  Pos max_n = 64;
  std::uint64_t seed = 1;
  int texts = 40;  // random texts per oracle suite
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  long checks = 0;
  std::string detail;  // first mismatch
};

// Reference instances, oracle equivalence of every query family, and
// serialization round trips.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opt);

}  // namespace ipm
