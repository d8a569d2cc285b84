#pragma once

#include <cstddef>
#include <span>

#include "stockseq/model.hpp"

// Exact solvers for small instances. Every size limit is a cap on the number
// of DP states or enumerated permutations; the environment variable
// STOCKSEQ_ORACLE_CAP replaces all default caps. Exceeding a cap throws
// OracleTooLarge, as does a value scale that does not fit 64-bit integers.
namespace stockseq::oracles {

/// Default caps before the environment override.
inline constexpr std::size_t kAlternatingStateCap = std::size_t{1} << 20;
inline constexpr std::size_t kStockStateCap = std::size_t{1} << 16;
inline constexpr std::size_t kPermutationCap = 40320;  // 8!
inline constexpr std::size_t kMatchingCap = 5040;      // 7!
inline constexpr std::size_t kBruteForceCap = 14400;   // 5! * 5!

/// `fallback` unless STOCKSEQ_ORACLE_CAP holds a positive integer.
[[nodiscard]] std::size_t effective_cap(std::size_t fallback);

struct OracleResult {
  Rational optimum;
  Arrangement witness;
  std::size_t explored = 0;
};

/// DP over (used x multiset, used y multiset) with the turn implied by the
/// counts; a y that takes the stock below zero is pruned. Optimum is the
/// smallest achievable maximum stock.
[[nodiscard]] OracleResult exact_alternating(const AlternatingInstance& inst);

/// All n! * n! orders; cross-check for exact_alternating at tiny sizes.
[[nodiscard]] OracleResult brute_force_alternating(const AlternatingInstance& inst);

struct StockSizeResult {
  Rational optimum;
  Values order;  // the witness sequence of signed jobs
  std::size_t explored = 0;
};

/// Unrestricted stock size of a zero-sum signed multiset (no alternation).
[[nodiscard]] StockSizeResult exact_stock_size(std::span<const Rational> signed_jobs);

/// x-jobs positive, y-jobs negative.
[[nodiscard]] StockSizeResult exact_stock_size(const AlternatingInstance& inst);

/// Distinct permutations of the x multiset; witness.sigma is the sorted x
/// index per position, witness.nu the identity.
[[nodiscard]] OracleResult exact_gasoline(const GasolineInstance& inst);

struct MatchingBounds {
  Rational alpha1;  // min over matchings of the largest positive x - y
  Rational beta1;   // min over matchings of the largest positive y - x
  std::size_t explored = 0;
};

[[nodiscard]] MatchingBounds exact_matching_bounds(const AlternatingInstance& inst);

/// Distinct x orders times distinct y orders.
[[nodiscard]] OracleResult exact_slated(const SlatedInstance& inst);

/// True iff the reduction instance has optimum at most 2.
[[nodiscard]] bool decide_3partition_via_opt(const AlternatingInstance& inst);

}  // namespace stockseq::oracles
