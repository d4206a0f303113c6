#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmwsim/blockage.hpp"

namespace mmwsim {

// First violated trace invariant (bounds, state/value pinning, legal
// transitions, per-slot increments), or nullopt.
std::optional<std::string> check_trace_invariants(const AttenuationTrace& trace, const BlockageParams& params);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast self-checks behind `mmwsim validate`.
std::vector<CheckResult> run_self_checks(unsigned threads = 0);

}  // namespace mmwsim
