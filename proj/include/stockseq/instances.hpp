#pragma once

#include <cstddef>
#include <cstdint>

#include "stockseq/model.hpp"

namespace stockseq::instances {

/// X: p copies of p-1, one 2, p(p-1) ones. Y: p-1 copies of p, p(p-1)+2 ones.
/// Alternating optimum is at least 2p-3 while the unrestricted stock size is p.
[[nodiscard]] AlternatingInstance gen_gap_alternating(int p);

/// X: p copies of p-1 and one 2. Y: p-1 copies of p and two ones.
/// Optimum 2p-3 with mu = p.
[[nodiscard]] AlternatingInstance gen_tight_alternating(int p);

/// n ones against y = (2,...,2,0,...,0), n even. mu stays 2 while the optimum
/// grows linearly (n/2 + 1 when evaluated exactly).
[[nodiscard]] GasolineInstance gen_gasoline_gap(std::size_t n);

/// n copies of ((n-1) + mu) / n against y = (mu, 1, ..., 1).
[[nodiscard]] GasolineInstance gen_lp_gap(std::size_t n, const Rational& mu);

/// X = {9,6,4,1}, y = (5,5,5,5).
[[nodiscard]] GasolineInstance gen_consecutiveness_example();

struct ThreePartitionInput {
  Values z;  // each in (1/4, 1/2)
  std::size_t k = 0;
};

/// Throws InvalidInstance unless |z| = 3k, sum(z) = k and every z in (1/4, 1/2).
void validate(const ThreePartitionInput& tp);

/// X: |z| + k ones. Y: 1 - z_i for each i, then k twos. A 3-partition exists
/// iff the alternating optimum is at most 2.
[[nodiscard]] AlternatingInstance reduce_3partition(const ThreePartitionInput& tp);

/// Integer values drawn as lo + (rng() mod (hi - lo + 1)) from std::mt19937_64
/// seeded with `seed`.
///
/// Alternating: n x-values, then n-1 y-values; the last y balances the sums.
/// If it falls outside [lo, hi] all y-values are redrawn.
/// Gasoline: the same, then the y order is shuffled (Fisher-Yates, j drawn as
/// rng() mod (i + 1) for i = n-1 down to 1).
/// Slated (n = total slots, n >= 2): n_x = 1 + rng() mod (n - 1) x-values;
/// y-values are a random composition of sum(x) into n - n_x positive parts
/// (distinct cut points drawn as 1 + rng() mod (S - 1)); the slot pattern is
/// a shuffled run of X's followed by Y's. x is redrawn when sum(x) < n_y.
[[nodiscard]] AlternatingInstance random_alternating(std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                                     std::int64_t hi = 20);
[[nodiscard]] GasolineInstance random_gasoline(std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                               std::int64_t hi = 20);
[[nodiscard]] SlatedInstance random_slated(std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                           std::int64_t hi = 20);

[[nodiscard]] AnyInstance gen_random(InstanceKind kind, std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                     std::int64_t hi = 20);

}  // namespace stockseq::instances
