#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rsl {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Substring filter on check names; empty runs everything.
  std::string filter;
  std::uint64_t seed = 0x52534C2D32303234ull;
  /// Per-check progress lines while running (may be null).
  std::ostream* log = nullptr;
};

/// Runs the acceptance suite (criteria 1-8). Check names are prefixed by the
/// criterion number ("1.duality", "6a.degree-slope", ...).
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts);

/// Sub-second invariant subset: duality, isometry, product formula, Phi pin.
std::vector<CheckResult> run_selftest();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rsl
