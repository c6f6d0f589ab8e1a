#ifndef EMBEZZLE_SELFTEST_HPP
#define EMBEZZLE_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace embezzle {

inline constexpr std::uint64_t kDefaultSelftestSeed = 20030422;

struct SelftestOptions {
  std::uint64_t seed = kDefaultSelftestSeed;
  /// Multiplies every streamed omega coefficient before it is checked. Only
  /// for proving that the suite notices a broken kernel; 1.0 in normal runs.
  double fault_omega_scale = 1.0;
};

struct InvariantResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  /// Description of the first failing case, empty when none failed.
  std::string first_failure;
};

struct SelftestSummary {
  std::vector<InvariantResult> results;

  bool passed() const noexcept {
    for (const auto& r : results)
      if (r.failures != 0)
        return false;
    return true;
  }
};

/// Runs every library invariant on seeded random instances. Output depends
/// only on the options.
SelftestSummary run_selftest(const SelftestOptions& options = {});

} // namespace embezzle

#endif
