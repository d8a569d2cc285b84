#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stockseq/alternating.hpp"
#include "stockseq/model.hpp"

// Independent helpers for tests: naive evaluators written straight from the
// problem definitions and generators for structured inputs.
namespace support {

using stockseq::Rational;
using stockseq::Values;

/// Max stock of x_0, y_0, x_1, y_1, ... and whether the stock stays >= 0.
struct NaiveAlt {
  Rational peak;
  bool feasible = true;
};
NaiveAlt naive_alternating(const Values& xs, const Values& ys);

/// max over circular intervals [k, l] of |sum x over [k, l] - sum y over
/// [k, l-1]| for a balanced gasoline sequence.
Rational circular_interval_eta(const Values& xs, const Values& ys);

/// max - min over all prefixes (empty prefix included) of a signed sequence.
Rational naive_range(const Values& signed_jobs);

bool same_multiset(Values a, Values b);

/// Balanced (q,T)-pair list of `count` pairs plus fix-up pairs.
std::vector<stockseq::alternating::JobPair> random_qt_pairs(std::mt19937_64& rng, const Rational& q,
                                                           const Rational& T, std::size_t count);

/// Instances built so that approx_alternating takes the batch path: one job
/// far above every y, small remaining x-jobs, y-jobs below eps*mu.
stockseq::AlternatingInstance batch_path_candidate(std::mt19937_64& rng, std::size_t n);

/// Draws candidates until one really takes the batch path.
stockseq::AlternatingInstance batch_path_instance(std::mt19937_64& rng, std::size_t n);

/// n_b y-jobs of 100 facing n_b + 1 x-jobs of value `big`, plus a tiny y and
/// one small (v, w) pair. Rank matching leaves alpha1 = big - 1 and the barrier
/// lower bound near 2 big, so approx_alternating falls back to pairing.
/// Throws std::invalid_argument when the balancing v leaves (1, 79).
stockseq::AlternatingInstance large_lower_bound_instance(std::size_t n_b, std::int64_t big);

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace support
