#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stockseq/model.hpp"

namespace stockseq::alternating {

/// One x-job and one y-job, by value and by sorted instance index.
struct JobPair {
  Rational x;
  Rational y;
  std::size_t x_index = 0;
  std::size_t y_index = 0;

  [[nodiscard]] Rational difference() const { return x - y; }
};

struct Matching {
  std::vector<JobPair> pairs;
  Rational alpha1;  // largest positive x - y, 0 if none
  Rational beta1;   // largest positive y - x, 0 if none
};

/// Rank matching x_i <-> y_i. Minimizes alpha1 and beta1 simultaneously.
[[nodiscard]] Matching sorted_matching(const AlternatingInstance& inst);

/// Greedy pair sequencer for (q,T)-pairs: zero-difference pairs first in input
/// order, then repeatedly the first negative pair that keeps the stock
/// nonnegative, else the first positive pair. Every prefix is nonnegative and
/// strictly below (1+q)T. Throws InvalidPairs when a precondition fails.
[[nodiscard]] Arrangement sequence_qt_pairs(std::span<const JobPair> pairs, const Rational& q, const Rational& T);

/// Rank matching sequenced with T = mu. Value at most mu + max(alpha1, beta1).
[[nodiscard]] Arrangement pairing_algorithm(const AlternatingInstance& inst);

/// Split of the jobs by a barrier C = (1 - eps) mu. Index lists refer to the
/// working instance `work`, which is the input with X/Y exchanged when the
/// input had fewer big x-jobs than big y-jobs. All lists are 0-based sorted
/// instance indices. `v` holds v_1 <= v_2 <= ...
/// (smallest x first) and `w` holds w_1 >= w_2 >= ... (largest y first).
struct BarrierDecomposition {
  AlternatingInstance work;
  bool swapped = false;
  Rational eps;
  Rational mu;
  Rational barrier;
  std::vector<std::size_t> a{};        // x >= C
  std::vector<std::size_t> a_prime{};  // a_{n_b+1}, ..., a_{n_a}
  std::vector<std::size_t> v{};        // x < C, ascending value
  std::vector<std::size_t> b_big{};    // y >= C
  std::vector<std::size_t> w_prime{};  // the n_a - n_b largest y below C
  std::vector<std::size_t> w{};        // remaining y, descending value
  std::optional<std::size_t> s{};      // 0-based index into a_prime/w_prime
  std::size_t h = 0;                 // number of i with w_i > v_i
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::size_t k = 0;
};

/// Throws NotApplicable unless 0 < eps < 1.
[[nodiscard]] BarrierDecomposition barrier_decompose(const AlternatingInstance& inst, const Rational& eps);

/// Lower bound on the optimum for a chosen 0-based s. Requires n_a > n_b and
/// s < n_a - n_b; throws NotApplicable otherwise.
[[nodiscard]] Rational lower_bound_at(const BarrierDecomposition& dec, std::size_t s);

/// Lower bound evaluated at the decomposition's own s.
[[nodiscard]] Rational lower_bound(const BarrierDecomposition& dec);

/// Largest lower bound over all admissible s (reporting only).
[[nodiscard]] Rational lower_bound_max(const BarrierDecomposition& dec);

/// Ordered pairs of a (1-eps)-alternating batch. A large batch lists the
/// anchor pair first and is emitted in list order.
struct AlternatingBatch {
  std::vector<JobPair> pairs;
  bool large = false;
  Rational imbalance;
};

/// |imbalance| <= (1-eps) mu; a large batch also needs nonnegative imbalance,
/// x >= y on the anchor pair only, and nonincreasing y along the list.
[[nodiscard]] bool satisfies_batch_conditions(const AlternatingBatch& batch, const Rational& eps, const Rational& mu);

[[nodiscard]] AlternatingBatch make_batch(std::vector<JobPair> pairs);

/// Partition of the jobs of `dec.work` into (1-eps)-alternating batches.
/// Requires alpha1 > (1-eps) mu on the working instance, a defined s and
/// LB(C) < 2 mu / (2 - eps). Throws NotApplicable otherwise.
[[nodiscard]] std::vector<AlternatingBatch> build_alternating_batches(const BarrierDecomposition& dec);
[[nodiscard]] std::vector<AlternatingBatch> build_alternating_batches(const AlternatingInstance& inst,
                                                                      const Rational& eps);

/// Orders batches by nondecreasing imbalance and greedily appends the first
/// batch that keeps the stock nonnegative.
[[nodiscard]] Arrangement sequence_batches(std::span<const AlternatingBatch> batches);

/// 2(1-eps) - 2/(2-eps) > 2 eps, needed for the batch path to exist.
[[nodiscard]] bool epsilon_condition_holds(const Rational& eps);

[[nodiscard]] Rational default_epsilon();  // 21/100

enum class Branch { PairingSmallAlpha, PairingLargeLowerBound, Batches };

struct ApproxResult {
  Arrangement arrangement;
  Branch branch = Branch::PairingSmallAlpha;
  bool oriented_swap = false;  // solved on the swapped instance
  Rational alpha1;             // after orientation (the larger of alpha1, beta1)
  Rational mu;
  std::optional<Rational> lower_bound;
  std::size_t batch_count = 0;
};

/// Pairing or batch path depending on alpha1 and the barrier lower bound.
/// The 1.79 guarantee is for eps = 21/100. Throws NotApplicable when
/// epsilon_condition_holds(eps) is false.
[[nodiscard]] ApproxResult approx_alternating(const AlternatingInstance& inst, const Rational& eps);

[[nodiscard]] Arrangement approx_179(const AlternatingInstance& inst);

}  // namespace stockseq::alternating
