#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latfm {

struct SelftestOptions {
  /// Upper end of the d-ranges for the counting claims.
  std::uint64_t range_d = 200;
  /// Test hook: perturb the built-in K3 Gram matrix before checking it.
  bool corrupt_builtin = false;
};

struct ClaimResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  std::string detail;
};

/// Every claim, in a fixed order. Claims run on LATFM_THREADS workers; the
/// report does not depend on the worker count.
std::vector<ClaimResult> run_selftest(const SelftestOptions& options = {});

}  // namespace latfm
