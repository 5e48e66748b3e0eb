#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qo/orbitdb.hpp"

namespace qo {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Expands every displayed polynomial identity carried by the tables (the
// normalization pipeline shapes, the theorem-proof witness pairs, the slice
// eliminant and discriminant, the topological-equivalence compositions) and
// checks them exactly.  A failure signals a transcription error.
std::vector<CheckResult> identity_selftests();

// Re-verifies each stored degeneration family through the classifier:
// label(upper) at t in {1, 1/2, 1/3} and label(lower) at t = 0.
std::vector<CheckResult> verify_families(uint64_t seed = 0);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace qo
