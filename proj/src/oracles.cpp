#include "stockseq/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "stockseq/errors.hpp"

namespace stockseq::oracles {

std::size_t effective_cap(std::size_t fallback) {
  const char* env = std::getenv("STOCKSEQ_ORACLE_CAP");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Integer image of a set of rationals: value = scaled / scale.
class Scale {
 public:
  explicit Scale(std::initializer_list<std::span<const Rational>> groups) : scale_(1) {
    mpz_class total = 0;
    for (auto g : groups) {
      for (const auto& v : g) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), v.denominator().get_mpz_t());
    }
    for (auto g : groups) {
      for (const auto& v : g) total += abs(v.numerator()) * (scale_ / v.denominator());
    }
    // Every prefix magnitude is bounded by the total, so this makes all DP
    // arithmetic overflow-free.
    if (total > mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
      throw OracleTooLarge("values do not fit the 64-bit oracle arithmetic");
    }
  }

  [[nodiscard]] std::int64_t of(const Rational& v) const {
    const mpz_class s = v.numerator() * (scale_ / v.denominator());
    return s.get_si();
  }

  [[nodiscard]] Rational back(std::int64_t v) const { return Rational(mpq_class(mpz_class(static_cast<long>(v)), scale_)); }

 private:
  mpz_class scale_;
};

struct Group {
  std::int64_t value = 0;
  std::size_t count = 0;
  std::size_t first = 0;  // first sorted index holding this value
};

// `values` sorted nonincreasing.
std::vector<Group> group_sorted(const Values& values, const Scale& sc) {
  std::vector<Group> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) {
      ++out.back().count;
    } else {
      out.push_back(Group{sc.of(values[i]), 1, i});
    }
  }
  return out;
}

// Product of (count + 1) over groups, or nullopt beyond `cap`.
std::optional<std::size_t> state_count(std::span<const Group> a, std::span<const Group> b, std::size_t cap) {
  std::size_t total = 1;
  for (auto groups : {a, b}) {
    for (const auto& g : groups) {
      if (total > cap / (g.count + 1)) return std::nullopt;
      total *= g.count + 1;
    }
  }
  return total <= cap ? std::optional<std::size_t>(total) : std::nullopt;
}

// Number of distinct orders of a multiset.
mpz_class multinomial(std::span<const Group> groups) {
  mpz_class result = 1;
  std::size_t placed = 0;
  for (const auto& g : groups) {
    for (std::size_t k = 1; k <= g.count; ++k) {
      result *= static_cast<unsigned long>(placed + k);
      result /= static_cast<unsigned long>(k);
    }
    placed += g.count;
  }
  return result;
}

void require_within(const mpz_class& count, std::size_t cap, const char* what) {
  if (count > mpz_class(static_cast<unsigned long>(cap))) {
    throw OracleTooLarge(std::string(what) + ": " + count.get_str() + " cases exceed the cap of " +
                         std::to_string(cap));
  }
}

// Sorted indices for a sequence of group ids, taking each group's indices in order.
Permutation indices_for(std::span<const std::size_t> ids, std::span<const Group> groups) {
  std::vector<std::size_t> next(groups.size(), 0);
  Permutation out;
  out.reserve(ids.size());
  for (std::size_t g : ids) out.push_back(groups[g].first + next[g]++);
  return out;
}

// Group id per sorted position, ascending: the start point for next_permutation.
std::vector<std::size_t> group_ids(std::span<const Group> groups) {
  std::vector<std::size_t> ids;
  for (std::size_t g = 0; g < groups.size(); ++g) ids.insert(ids.end(), groups[g].count, g);
  return ids;
}

}  // namespace

OracleResult exact_alternating(const AlternatingInstance& inst) {
  const Scale sc({inst.x(), inst.y()});
  const auto gx = group_sorted(inst.x(), sc);
  const auto gy = group_sorted(inst.y(), sc);
  const std::size_t cap = effective_cap(kAlternatingStateCap);
  const auto total = state_count(gx, gy, cap);
  if (!total) throw OracleTooLarge("alternating oracle state space exceeds the cap of " + std::to_string(cap));

  // Mixed radix: x groups first, then y groups.
  const std::size_t kx = gx.size();
  std::vector<Group> digits(gx);
  digits.insert(digits.end(), gy.begin(), gy.end());
  std::vector<std::size_t> stride(digits.size());
  {
    std::size_t s = 1;
    for (std::size_t d = 0; d < digits.size(); ++d) {
      stride[d] = s;
      s *= digits[d].count + 1;
    }
  }

  std::vector<std::int64_t> best(*total, kUnreached);
  std::vector<std::uint16_t> move(*total, 0);
  best[0] = 0;
  std::vector<std::size_t> cnt(digits.size(), 0);
  std::size_t explored = 0;
  for (std::size_t s = 0; s < *total; ++s) {
    if (s > 0) {  // odometer increment of cnt
      for (std::size_t d = 0;; ++d) {
        if (++cnt[d] <= digits[d].count) break;
        cnt[d] = 0;
      }
    }
    if (best[s] == kUnreached) continue;
    ++explored;
    std::int64_t height = 0;
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    for (std::size_t d = 0; d < digits.size(); ++d) {
      const auto c = static_cast<std::int64_t>(cnt[d]);
      if (d < kx) {
        height += c * digits[d].value;
        used_x += cnt[d];
      } else {
        height -= c * digits[d].value;
        used_y += cnt[d];
      }
    }
    const bool x_turn = used_x == used_y;
    const std::size_t lo = x_turn ? 0 : kx;
    const std::size_t hi = x_turn ? kx : digits.size();
    for (std::size_t d = lo; d < hi; ++d) {
      if (cnt[d] == digits[d].count) continue;
      const std::int64_t h = x_turn ? height + digits[d].value : height - digits[d].value;
      if (h < 0) continue;
      const std::int64_t cand = std::max(best[s], h);
      const std::size_t ns = s + stride[d];
      if (cand < best[ns]) {
        best[ns] = cand;
        move[ns] = static_cast<std::uint16_t>(d);
      }
    }
  }
  const std::size_t last = *total - 1;
  if (best[last] == kUnreached) throw InternalConsistency("alternating oracle found no feasible order");

  std::vector<std::size_t> xs;
  std::vector<std::size_t> ys;
  for (std::size_t s = last; s != 0;) {
    const std::size_t d = move[s];
    (d < kx ? xs : ys).push_back(d < kx ? d : d - kx);
    s -= stride[d];
  }
  std::reverse(xs.begin(), xs.end());
  std::reverse(ys.begin(), ys.end());
  OracleResult res;
  res.optimum = sc.back(best[last]);
  res.witness = Arrangement{indices_for(xs, gx), indices_for(ys, gy)};
  res.explored = explored;
  return res;
}

OracleResult brute_force_alternating(const AlternatingInstance& inst) {
  const std::size_t n = inst.size();
  mpz_class fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<unsigned long>(k);
  require_within(fact * fact, effective_cap(kBruteForceCap), "brute-force alternating oracle");
  const Scale sc({inst.x(), inst.y()});
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
  for (const auto& v : inst.x()) x.push_back(sc.of(v));
  for (const auto& v : inst.y()) y.push_back(sc.of(v));

  Permutation sigma = identity_permutation(n);
  std::int64_t best = kUnreached;
  OracleResult res;
  do {
    Permutation nu = identity_permutation(n);
    do {
      ++res.explored;
      std::int64_t level = 0;
      std::int64_t peak = 0;
      bool ok = true;
      for (std::size_t t = 0; t < n && ok; ++t) {
        level += x[sigma[t]];
        peak = std::max(peak, level);
        level -= y[nu[t]];
        ok = level >= 0;
      }
      if (ok && peak < best) {
        best = peak;
        res.witness = Arrangement{sigma, nu};
      }
    } while (std::next_permutation(nu.begin(), nu.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (best == kUnreached) throw InternalConsistency("brute force found no feasible order");
  res.optimum = sc.back(best);
  return res;
}

StockSizeResult exact_stock_size(std::span<const Rational> signed_jobs) {
  if (!sum(signed_jobs).is_zero()) throw InvalidInstance("stock size oracle needs a zero-sum job set");
  for (const auto& v : signed_jobs) {
    if (v.is_zero()) throw InvalidInstance("stock size oracle needs nonzero jobs");
  }
  const Scale sc({signed_jobs});
  const SortedValues sorted = sort_nonincreasing(signed_jobs);
  const auto groups = group_sorted(sorted.values, sc);
  const std::size_t cap = effective_cap(kStockStateCap);
  const auto total = state_count(groups, {}, cap);
  if (!total) throw OracleTooLarge("stock size oracle state space exceeds the cap of " + std::to_string(cap));

  std::vector<std::size_t> stride(groups.size());
  {
    std::size_t s = 1;
    for (std::size_t d = 0; d < groups.size(); ++d) {
      stride[d] = s;
      s *= groups[d].count + 1;
    }
  }
  std::vector<std::int64_t> best(*total, kUnreached);
  std::vector<std::uint16_t> move(*total, 0);
  best[0] = 0;
  std::vector<std::size_t> cnt(groups.size(), 0);
  StockSizeResult res;
  for (std::size_t s = 0; s < *total; ++s) {
    if (s > 0) {
      for (std::size_t d = 0;; ++d) {
        if (++cnt[d] <= groups[d].count) break;
        cnt[d] = 0;
      }
    }
    if (best[s] == kUnreached) continue;
    ++res.explored;
    std::int64_t height = 0;
    for (std::size_t d = 0; d < groups.size(); ++d) height += static_cast<std::int64_t>(cnt[d]) * groups[d].value;
    for (std::size_t d = 0; d < groups.size(); ++d) {
      if (cnt[d] == groups[d].count) continue;
      const std::int64_t h = height + groups[d].value;
      if (h < 0) continue;
      const std::int64_t cand = std::max(best[s], h);
      if (cand < best[s + stride[d]]) {
        best[s + stride[d]] = cand;
        move[s + stride[d]] = static_cast<std::uint16_t>(d);
      }
    }
  }
  const std::size_t last = *total - 1;
  if (best[last] == kUnreached) throw InternalConsistency("stock size oracle found no feasible order");
  for (std::size_t s = last; s != 0; s -= stride[move[s]]) res.order.push_back(sorted.values[groups[move[s]].first]);
  std::reverse(res.order.begin(), res.order.end());
  res.optimum = sc.back(best[last]);
  return res;
}

StockSizeResult exact_stock_size(const AlternatingInstance& inst) {
  Values jobs = inst.x();
  for (const auto& v : inst.y()) jobs.push_back(-v);
  return exact_stock_size(jobs);
}

OracleResult exact_gasoline(const GasolineInstance& inst) {
  const Scale sc({inst.x(), inst.y()});
  const auto groups = group_sorted(inst.x(), sc);
  require_within(multinomial(groups), effective_cap(kPermutationCap), "gasoline oracle");
  std::vector<std::int64_t> y;
  for (const auto& v : inst.y()) y.push_back(sc.of(v));

  std::vector<std::size_t> ids = group_ids(groups);
  std::vector<std::size_t> best_ids;
  std::int64_t best = kUnreached;
  OracleResult res;
  do {
    ++res.explored;
    std::int64_t level = 0;
    std::int64_t hi = 0;
    std::int64_t lo = 0;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      level += groups[ids[j]].value;
      hi = std::max(hi, level);
      level -= y[j];
      lo = std::min(lo, level);
    }
    if (hi - lo < best) {
      best = hi - lo;
      best_ids = ids;
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  res.optimum = sc.back(best);
  res.witness = Arrangement{indices_for(best_ids, groups), identity_permutation(inst.size())};
  return res;
}

MatchingBounds exact_matching_bounds(const AlternatingInstance& inst) {
  const std::size_t n = inst.size();
  mpz_class fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<unsigned long>(k);
  require_within(fact, effective_cap(kMatchingCap), "matching oracle");
  const Scale sc({inst.x(), inst.y()});
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
  for (const auto& v : inst.x()) x.push_back(sc.of(v));
  for (const auto& v : inst.y()) y.push_back(sc.of(v));

  Permutation p = identity_permutation(n);
  std::int64_t best_a = kUnreached;
  std::int64_t best_b = kUnreached;
  MatchingBounds res;
  do {
    ++res.explored;
    std::int64_t a = 0;
    std::int64_t b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a = std::max(a, x[i] - y[p[i]]);
      b = std::max(b, y[p[i]] - x[i]);
    }
    best_a = std::min(best_a, a);
    best_b = std::min(best_b, b);
  } while (std::next_permutation(p.begin(), p.end()));
  res.alpha1 = sc.back(best_a);
  res.beta1 = sc.back(best_b);
  return res;
}

OracleResult exact_slated(const SlatedInstance& inst) {
  const Scale sc({inst.x(), inst.y()});
  const auto gx = group_sorted(inst.x(), sc);
  const auto gy = group_sorted(inst.y(), sc);
  require_within(multinomial(gx) * multinomial(gy), effective_cap(kPermutationCap), "slated oracle");

  std::vector<std::size_t> xs = group_ids(gx);
  std::vector<std::size_t> best_x;
  std::vector<std::size_t> best_y;
  std::int64_t best = kUnreached;
  OracleResult res;
  do {
    std::vector<std::size_t> ys = group_ids(gy);
    do {
      ++res.explored;
      std::int64_t level = 0;
      std::int64_t hi = 0;
      std::int64_t lo = 0;
      std::size_t tx = 0;
      std::size_t ty = 0;
      for (auto kind : inst.slots()) {
        if (kind == SlotKind::X) {
          level += gx[xs[tx++]].value;
        } else {
          level -= gy[ys[ty++]].value;
        }
        hi = std::max(hi, level);
        lo = std::min(lo, level);
      }
      if (hi - lo < best) {
        best = hi - lo;
        best_x = xs;
        best_y = ys;
      }
    } while (std::next_permutation(ys.begin(), ys.end()));
  } while (std::next_permutation(xs.begin(), xs.end()));
  res.optimum = sc.back(best);
  res.witness = Arrangement{indices_for(best_x, gx), indices_for(best_y, gy)};
  return res;
}

bool decide_3partition_via_opt(const AlternatingInstance& inst) {
  return exact_alternating(inst).optimum <= Rational(2);
}

}  // namespace stockseq::oracles
