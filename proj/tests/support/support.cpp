#include "support.hpp"

#include <algorithm>
#include <stdexcept>

namespace support {

using stockseq::alternating::JobPair;

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

NaiveAlt naive_alternating(const Values& xs, const Values& ys) {
  NaiveAlt out;
  Rational s;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    s += xs[t];
    if (s > out.peak) out.peak = s;
    s -= ys[t];
    if (s < Rational(0)) out.feasible = false;
  }
  return out;
}

Rational circular_interval_eta(const Values& xs, const Values& ys) {
  const std::size_t n = xs.size();
  Rational best;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t len = 1; len <= n; ++len) {
      Rational v;
      for (std::size_t t = 0; t < len; ++t) {
        v += xs[(k + t) % n];
        if (t + 1 < len) v -= ys[(k + t) % n];
      }
      best = std::max(best, stockseq::abs(v));
    }
  }
  return best;
}

Rational naive_range(const Values& signed_jobs) {
  Rational s;
  Rational hi;
  Rational lo;
  for (const auto& v : signed_jobs) {
    s += v;
    hi = std::max(hi, s);
    lo = std::min(lo, s);
  }
  return hi - lo;
}

bool same_multiset(Values a, Values b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::vector<JobPair> random_qt_pairs(std::mt19937_64& rng, const Rational& q, const Rational& T, std::size_t count) {
  std::vector<JobPair> pairs;
  const Rational qT = q * T;
  Rational balance;
  // Values on a grid of T/20 keep the arithmetic small but non-integral.
  const Rational step = T / Rational(20);
  for (std::size_t k = 0; k < count; ++k) {
    const Rational x = step * Rational(draw(rng, 1, 20));
    Rational lo = std::max(x - qT, step);
    Rational hi = std::min(x + qT, T);
    const std::int64_t steps = ((hi - lo) / step).numerator().get_si() /
                               std::max<long>(1, ((hi - lo) / step).denominator().get_si());
    const Rational y = lo + step * Rational(draw(rng, 0, std::max<std::int64_t>(0, steps)));
    pairs.push_back(JobPair{x, std::min(y, hi), 0, 0});
    balance += pairs.back().x - pairs.back().y;
  }
  // Fix-up pairs: each one moves the balance by at most qT and at most T/2.
  const Rational cap = std::min(qT, T / Rational(2));
  while (!balance.is_zero()) {
    const Rational d = std::min(stockseq::abs(balance), cap);
    if (balance.sign() > 0) {
      pairs.push_back(JobPair{T - d, T, 0, 0});
      balance -= d;
    } else {
      pairs.push_back(JobPair{T, T - d, 0, 0});
      balance += d;
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    pairs[k].x_index = k;
    pairs[k].y_index = k;
  }
  return pairs;
}

stockseq::AlternatingInstance batch_path_candidate(std::mt19937_64& rng, std::size_t n) {
  if (n < 6) throw std::invalid_argument("batch path candidates need n >= 6");
  const std::int64_t big = draw(rng, 50, 100);
  const std::int64_t cap = big / 5;
  Values x{Rational(big)};
  std::int64_t total = big;
  for (std::size_t i = 1; i < n; ++i) {
    const std::int64_t v = draw(rng, 1, 3);
    total += v;
    x.emplace_back(v);
  }
  if (total > static_cast<std::int64_t>(n) * cap) total = -1;
  std::vector<std::int64_t> y(n, 1);
  std::int64_t left = total - static_cast<std::int64_t>(n);
  while (left > 0) {
    auto& slot = y[static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(n) - 1))];
    if (slot < cap) {
      ++slot;
      --left;
    }
  }
  if (total < 0) throw std::runtime_error("candidate overflowed its y capacity");
  Values yv;
  for (auto v : y) yv.emplace_back(v);
  return stockseq::AlternatingInstance(std::move(x), std::move(yv));
}

stockseq::AlternatingInstance large_lower_bound_instance(std::size_t n_b, std::int64_t big) {
  const auto nb = static_cast<std::int64_t>(n_b);
  const std::int64_t v = 100 * nb + 2 - (nb + 1) * big;
  if (v <= 1 || v >= 79 || big <= 80 || big > 100) throw std::invalid_argument("no balanced instance for these parameters");
  Values x(n_b + 1, Rational(big));
  x.emplace_back(v);
  Values y(n_b, Rational(100));
  y.emplace_back(1);
  y.emplace_back(1);
  return stockseq::AlternatingInstance(std::move(x), std::move(y));
}

stockseq::AlternatingInstance batch_path_instance(std::mt19937_64& rng, std::size_t n) {
  using namespace stockseq::alternating;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    try {
      auto inst = batch_path_candidate(rng, n);
      if (approx_alternating(inst, default_epsilon()).branch == Branch::Batches) return inst;
    } catch (const std::runtime_error&) {
    }
  }
  throw std::runtime_error("no batch-path instance found");
}

}  // namespace support
