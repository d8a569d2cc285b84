#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Seeded property sweeps over small random instances, checked against the
// exact oracles. Used by `stockseq verify`.
namespace stockseq::verify {

struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations{};

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Rank matching optimality, pairing bound, lower bound soundness, batch
/// conditions and the 1.79 ratio. Sizes cycle through n = 1..7.
[[nodiscard]] SuiteReport verify_alternating(std::size_t count, std::uint64_t seed);

/// Column values, consecutiveness, block structure, rounding band, the
/// eta_lp + mu_x bound and the factor 2. Sizes cycle through n = 1..6.
[[nodiscard]] SuiteReport verify_gasoline(std::size_t count, std::uint64_t seed);

/// Reduction soundness, eta_lp + mu_x + mu_y bound and the factor 3. Sizes
/// cycle through 2..7 slots.
[[nodiscard]] SuiteReport verify_slated(std::size_t count, std::uint64_t seed);

}  // namespace stockseq::verify
