#include "stockseq/alternating.hpp"

#include <algorithm>
#include <numeric>

#include "stockseq/errors.hpp"

namespace stockseq::alternating {

namespace {

Arrangement arrangement_from_pairs(std::span<const JobPair> ordered) {
  Arrangement arr;
  arr.sigma.reserve(ordered.size());
  arr.nu.reserve(ordered.size());
  for (const auto& p : ordered) {
    arr.sigma.push_back(p.x_index);
    arr.nu.push_back(p.y_index);
  }
  return arr;
}

JobPair pair_of(const AlternatingInstance& inst, std::size_t xi, std::size_t yi) {
  return JobPair{inst.x()[xi], inst.y()[yi], xi, yi};
}

}  // namespace

Matching sorted_matching(const AlternatingInstance& inst) {
  Matching m;
  m.pairs.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    m.pairs.push_back(pair_of(inst, i, i));
    const Rational d = inst.x()[i] - inst.y()[i];
    if (d > m.alpha1) m.alpha1 = d;
    if (-d > m.beta1) m.beta1 = -d;
  }
  return m;
}

Arrangement sequence_qt_pairs(std::span<const JobPair> pairs, const Rational& q, const Rational& T) {
  if (q.sign() <= 0 || q > Rational(1)) throw InvalidPairs("q must lie in (0, 1]");
  if (T.sign() <= 0) throw InvalidPairs("T must be positive");
  const Rational qT = q * T;
  Rational balance;
  for (const auto& p : pairs) {
    if (p.x > T || p.y > T) throw InvalidPairs("pair job exceeds T");
    if (abs(p.x - p.y) > qT) throw InvalidPairs("pair difference exceeds qT");
    balance += p.x - p.y;
  }
  if (!balance.is_zero()) throw InvalidPairs("pairs do not balance");

  std::vector<JobPair> ordered;
  ordered.reserve(pairs.size());
  std::vector<std::size_t> negative;
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int s = (pairs[i].x - pairs[i].y).sign();
    if (s == 0) {
      ordered.push_back(pairs[i]);
    } else if (s < 0) {
      negative.push_back(i);
    } else {
      positive.push_back(i);
    }
  }

  Rational stock;
  std::size_t next_positive = 0;
  std::vector<char> used_negative(negative.size(), 0);
  std::size_t negatives_left = negative.size();
  while (negatives_left > 0 || next_positive < positive.size()) {
    bool placed = false;
    for (std::size_t k = 0; k < negative.size() && !placed; ++k) {
      if (used_negative[k]) continue;
      const JobPair& p = pairs[negative[k]];
      if ((stock + p.x - p.y).sign() >= 0) {
        stock += p.x - p.y;
        ordered.push_back(p);
        used_negative[k] = 1;
        --negatives_left;
        placed = true;
      }
    }
    if (placed) continue;
    if (next_positive == positive.size()) {
      throw InternalConsistency("pair sequencer stalled with only infeasible negative pairs left");
    }
    const JobPair& p = pairs[positive[next_positive++]];
    stock += p.x - p.y;
    ordered.push_back(p);
  }
  return arrangement_from_pairs(ordered);
}

Arrangement pairing_algorithm(const AlternatingInstance& inst) {
  const Matching m = sorted_matching(inst);
  if (m.beta1 > m.alpha1) return unswap_arrangement(pairing_algorithm(inst.swapped()));
  const Rational mu = inst.mu();
  const Rational q = m.alpha1.is_zero() ? Rational(1) : m.alpha1 / mu;
  return sequence_qt_pairs(m.pairs, q, mu);
}

BarrierDecomposition barrier_decompose(const AlternatingInstance& inst, const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) throw NotApplicable("barrier needs 0 < eps < 1");
  const Rational mu = inst.mu();
  const Rational barrier = (Rational(1) - eps) * mu;
  auto count_at_least = [&](const Values& v) {
    return static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [&](const Rational& e) { return e >= barrier; }));
  };
  const bool swap = count_at_least(inst.x()) < count_at_least(inst.y());
  BarrierDecomposition dec{.work = swap ? inst.swapped() : inst, .swapped = swap, .eps = eps, .mu = mu, .barrier = barrier};
  const auto& x = dec.work.x();
  const auto& y = dec.work.y();
  const std::size_t n = dec.work.size();
  dec.n_a = count_at_least(x);
  dec.n_b = count_at_least(y);
  dec.k = n - dec.n_a;
  for (std::size_t i = 0; i < dec.n_a; ++i) dec.a.push_back(i);
  for (std::size_t i = dec.n_b; i < dec.n_a; ++i) {
    dec.a_prime.push_back(i);
    dec.w_prime.push_back(i);
  }
  for (std::size_t i = 0; i < dec.n_b; ++i) dec.b_big.push_back(i);
  for (std::size_t i = n; i > dec.n_a; --i) dec.v.push_back(i - 1);
  for (std::size_t i = dec.n_a; i < n; ++i) dec.w.push_back(i);
  // w_i - v_i is nonincreasing in i, so h is the length of the positive run.
  while (dec.h < dec.k && y[dec.w[dec.h]] > x[dec.v[dec.h]]) ++dec.h;
  const Rational small = eps * mu;
  for (std::size_t i = 0; i < dec.w_prime.size(); ++i) {
    if (y[dec.w_prime[i]] < small) {
      dec.s = i;
      break;
    }
  }
  return dec;
}

Rational lower_bound_at(const BarrierDecomposition& dec, std::size_t s) {
  if (dec.n_a <= dec.n_b) throw NotApplicable("lower bound needs n_a > n_b");
  const std::size_t span_len = dec.n_a - dec.n_b;
  if (s >= span_len) throw NotApplicable("lower bound index s out of range");
  const auto& x = dec.work.x();
  const auto& y = dec.work.y();
  Rational total;
  for (std::size_t i = s; i < span_len; ++i) total += Rational(2) * x[dec.a_prime[i]] - y[dec.w_prime[i]];
  for (std::size_t i = 0; i < dec.h; ++i) total += x[dec.v[i]] - y[dec.w[i]];
  return total / Rational(static_cast<std::int64_t>(span_len - s));
}

Rational lower_bound(const BarrierDecomposition& dec) {
  if (!dec.s) throw NotApplicable("lower bound needs an index s with w'_s < eps mu");
  return lower_bound_at(dec, *dec.s);
}

Rational lower_bound_max(const BarrierDecomposition& dec) {
  if (dec.n_a <= dec.n_b) throw NotApplicable("lower bound needs n_a > n_b");
  Rational best = lower_bound_at(dec, 0);
  for (std::size_t s = 1; s < dec.n_a - dec.n_b; ++s) best = std::max(best, lower_bound_at(dec, s));
  return best;
}

AlternatingBatch make_batch(std::vector<JobPair> pairs) {
  AlternatingBatch b;
  for (const auto& p : pairs) b.imbalance += p.x - p.y;
  b.large = pairs.size() > 1;
  b.pairs = std::move(pairs);
  return b;
}

bool satisfies_batch_conditions(const AlternatingBatch& batch, const Rational& eps, const Rational& mu) {
  if (batch.pairs.empty()) return false;
  Rational imbalance;
  for (const auto& p : batch.pairs) imbalance += p.x - p.y;
  if (imbalance != batch.imbalance) return false;
  if (abs(imbalance) > (Rational(1) - eps) * mu) return false;
  if (batch.pairs.size() == 1) return true;
  if (imbalance.sign() < 0) return false;
  if (batch.pairs[0].x < batch.pairs[0].y) return false;
  for (std::size_t i = 1; i < batch.pairs.size(); ++i) {
    if (batch.pairs[i].x > batch.pairs[i].y) return false;
    if (batch.pairs[i].y > batch.pairs[i - 1].y) return false;
  }
  return true;
}

bool epsilon_condition_holds(const Rational& eps) {
  const Rational two(2);
  return two * (Rational(1) - eps) - two / (two - eps) > two * eps;
}

Rational default_epsilon() { return Rational(21, 100); }

std::vector<AlternatingBatch> build_alternating_batches(const BarrierDecomposition& dec) {
  const auto& work = dec.work;
  const auto& x = work.x();
  const auto& y = work.y();
  const Rational& mu = dec.mu;
  const Rational& eps = dec.eps;
  const Rational cap = (Rational(1) - eps) * mu;

  if (!epsilon_condition_holds(eps)) throw NotApplicable("eps violates 2(1-eps) - 2/(2-eps) > 2 eps");
  if (sorted_matching(work).alpha1 <= cap) throw NotApplicable("batch construction needs alpha1 > (1-eps) mu");
  if (!dec.s) throw NotApplicable("batch construction needs an index s with w'_s < eps mu");
  if (lower_bound(dec) >= Rational(2) * mu / (Rational(2) - eps)) {
    throw NotApplicable("batch construction needs LB(C) < 2 mu / (2 - eps)");
  }

  const std::size_t s = *dec.s;
  std::vector<AlternatingBatch> batches;

  // Rank pairs up to (but excluding) the pair holding w'_s.
  for (std::size_t i = 0; i < dec.n_b + s; ++i) batches.push_back(make_batch({pair_of(work, i, i)}));

  std::vector<char> used(dec.k, 0);
  std::size_t next_free = 0;
  const Rational small = eps * mu;
  for (std::size_t i = s; i < dec.a_prime.size(); ++i) {
    const std::size_t ai = dec.a_prime[i];
    const std::size_t wi = dec.w_prime[i];
    std::vector<JobPair> pairs{pair_of(work, ai, wi)};
    if (x[ai] - y[wi] > cap) {
      const Rational need = small - y[wi];
      Rational gathered;
      while (gathered < need && next_free < dec.h) {
        const std::size_t j = next_free++;
        used[j] = 1;
        gathered += y[dec.w[j]] - x[dec.v[j]];
        pairs.push_back(pair_of(work, dec.v[j], dec.w[j]));
      }
      if (gathered < need) {
        throw InternalConsistency("ran out of (v, w) pairs while building an alternating batch");
      }
    }
    batches.push_back(make_batch(std::move(pairs)));
  }

  std::vector<std::size_t> rest_v;
  std::vector<std::size_t> rest_w;
  for (std::size_t j = 0; j < dec.k; ++j) {
    if (used[j]) continue;
    rest_v.push_back(dec.v[j]);
    rest_w.push_back(dec.w[j]);
  }
  // Descending rank on both sides: smallest sorted index first.
  std::sort(rest_v.begin(), rest_v.end());
  std::sort(rest_w.begin(), rest_w.end());
  for (std::size_t j = 0; j < rest_v.size(); ++j) batches.push_back(make_batch({pair_of(work, rest_v[j], rest_w[j])}));

  for (const auto& b : batches) {
    if (!satisfies_batch_conditions(b, eps, mu)) {
      throw InternalConsistency("constructed batch violates the alternating batch conditions");
    }
  }
  return batches;
}

std::vector<AlternatingBatch> build_alternating_batches(const AlternatingInstance& inst, const Rational& eps) {
  return build_alternating_batches(barrier_decompose(inst, eps));
}

Arrangement sequence_batches(std::span<const AlternatingBatch> batches) {
  std::vector<std::size_t> order(batches.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return batches[a].imbalance < batches[b].imbalance; });

  std::vector<JobPair> sequence;
  Rational stock;
  std::vector<char> taken(order.size(), 0);
  for (std::size_t placed = 0; placed < order.size(); ++placed) {
    std::size_t pick = order.size();
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (!taken[k] && (stock + batches[order[k]].imbalance).sign() >= 0) {
        pick = k;
        break;
      }
    }
    if (pick == order.size()) throw NotApplicable("batches cannot be sequenced: imbalances do not cancel");
    taken[pick] = 1;
    const auto& batch = batches[order[pick]];
    stock += batch.imbalance;
    sequence.insert(sequence.end(), batch.pairs.begin(), batch.pairs.end());
  }
  return arrangement_from_pairs(sequence);
}

ApproxResult approx_alternating(const AlternatingInstance& inst, const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) throw NotApplicable("eps must lie in (0, 1)");
  if (!epsilon_condition_holds(eps)) throw NotApplicable("eps violates 2(1-eps) - 2/(2-eps) > 2 eps");

  const Matching m = sorted_matching(inst);
  ApproxResult res;
  res.oriented_swap = m.beta1 > m.alpha1;
  res.alpha1 = std::max(m.alpha1, m.beta1);
  res.mu = inst.mu();
  const Rational cap = (Rational(1) - eps) * res.mu;

  if (res.alpha1 <= cap) {
    res.branch = Branch::PairingSmallAlpha;
    res.arrangement = pairing_algorithm(inst);
    return res;
  }

  const AlternatingInstance work = res.oriented_swap ? inst.swapped() : inst;
  const BarrierDecomposition dec = barrier_decompose(work, eps);
  if (dec.swapped) throw InternalConsistency("oriented instance unexpectedly has n_a < n_b");
  if (dec.s) res.lower_bound = lower_bound(dec);
  if (!res.lower_bound || *res.lower_bound >= Rational(2) * res.mu / (Rational(2) - eps)) {
    res.branch = Branch::PairingLargeLowerBound;
    res.arrangement = pairing_algorithm(inst);
    return res;
  }

  const auto batches = build_alternating_batches(dec);
  res.branch = Branch::Batches;
  res.batch_count = batches.size();
  const Arrangement arr = sequence_batches(batches);
  res.arrangement = res.oriented_swap ? unswap_arrangement(arr) : arr;
  return res;
}

Arrangement approx_179(const AlternatingInstance& inst) {
  return approx_alternating(inst, default_epsilon()).arrangement;
}

}  // namespace stockseq::alternating
