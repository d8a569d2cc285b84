#include "stockseq/instances.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "stockseq/errors.hpp"

namespace stockseq::instances {

namespace {

void require_p(int p) {
  if (p < 3) throw InvalidInstance("family parameter p must be at least 3, got " + std::to_string(p));
}

class Draw {
 public:
  Draw(std::uint64_t seed, std::int64_t lo, std::int64_t hi) : rng_(seed), lo_(lo), hi_(hi) {
    if (lo < 1 || hi < lo) throw InvalidInstance("random value range must satisfy 1 <= lo <= hi");
  }

  std::int64_t value() { return lo_ + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi_ - lo_ + 1)); }
  std::uint64_t below(std::uint64_t bound) { return rng_() % bound; }
  [[nodiscard]] bool in_range(std::int64_t v) const { return v >= lo_ && v <= hi_; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 rng_;
  std::int64_t lo_;
  std::int64_t hi_;
};

constexpr int kMaxAttempts = 100000;

// x then a balanced y, both in [lo, hi].
std::pair<Values, Values> balanced_pair(Draw& d, std::size_t n) {
  if (n == 0) throw InvalidInstance("random instance size must be positive");
  Values x;
  std::int64_t sx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t v = d.value();
    sx += v;
    x.emplace_back(v);
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Values y;
    std::int64_t sy = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::int64_t v = d.value();
      sy += v;
      y.emplace_back(v);
    }
    if (d.in_range(sx - sy)) {
      y.emplace_back(sx - sy);
      return {std::move(x), std::move(y)};
    }
  }
  throw InvalidInstance("could not balance a random instance; widen the value range");
}

}  // namespace

AlternatingInstance gen_gap_alternating(int p) {
  require_p(p);
  Values x(static_cast<std::size_t>(p), Rational(p - 1));
  x.emplace_back(2);
  x.insert(x.end(), static_cast<std::size_t>(p * (p - 1)), Rational(1));
  Values y(static_cast<std::size_t>(p - 1), Rational(p));
  y.insert(y.end(), static_cast<std::size_t>(p * (p - 1) + 2), Rational(1));
  return AlternatingInstance(std::move(x), std::move(y));
}

AlternatingInstance gen_tight_alternating(int p) {
  require_p(p);
  Values x(static_cast<std::size_t>(p), Rational(p - 1));
  x.emplace_back(2);
  Values y(static_cast<std::size_t>(p - 1), Rational(p));
  y.emplace_back(1);
  y.emplace_back(1);
  return AlternatingInstance(std::move(x), std::move(y));
}

GasolineInstance gen_gasoline_gap(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw InvalidInstance("gasoline gap family needs a positive even n");
  Values x(n, Rational(1));
  Values y(n / 2, Rational(2));
  y.resize(n, Rational(0));
  return GasolineInstance(std::move(x), std::move(y));
}

GasolineInstance gen_lp_gap(std::size_t n, const Rational& mu) {
  if (n == 0) throw InvalidInstance("LP gap family needs n >= 1");
  if (mu < Rational(1)) throw InvalidInstance("LP gap family needs mu >= 1");
  const Rational nn(static_cast<std::int64_t>(n));
  Values x(n, (nn - Rational(1) + mu) / nn);
  Values y(1, mu);
  y.resize(n, Rational(1));
  return GasolineInstance(std::move(x), std::move(y));
}

GasolineInstance gen_consecutiveness_example() {
  return GasolineInstance({9, 6, 4, 1}, {5, 5, 5, 5});
}

void validate(const ThreePartitionInput& tp) {
  if (tp.k == 0) throw InvalidInstance("3-partition input needs k >= 1");
  if (tp.z.size() != 3 * tp.k) throw InvalidInstance("3-partition input needs exactly 3k numbers");
  const Rational quarter(1, 4);
  const Rational half(1, 2);
  for (const auto& z : tp.z) {
    if (z <= quarter || z >= half) throw InvalidInstance("3-partition numbers must lie in (1/4, 1/2), got " + z.to_string());
  }
  if (sum(tp.z) != Rational(static_cast<std::int64_t>(tp.k))) throw InvalidInstance("3-partition numbers must sum to k");
}

AlternatingInstance reduce_3partition(const ThreePartitionInput& tp) {
  validate(tp);
  Values x(tp.z.size() + tp.k, Rational(1));
  Values y;
  for (const auto& z : tp.z) y.push_back(Rational(1) - z);
  y.insert(y.end(), tp.k, Rational(2));
  return AlternatingInstance(std::move(x), std::move(y));
}

AlternatingInstance random_alternating(std::size_t n, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  Draw d(seed, lo, hi);
  auto [x, y] = balanced_pair(d, n);
  return AlternatingInstance(std::move(x), std::move(y));
}

GasolineInstance random_gasoline(std::size_t n, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  Draw d(seed, lo, hi);
  auto [x, y] = balanced_pair(d, n);
  d.shuffle(y);
  return GasolineInstance(std::move(x), std::move(y));
}

SlatedInstance random_slated(std::size_t n, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  if (n < 2) throw InvalidInstance("random slated instance needs at least two slots");
  Draw d(seed, lo, hi);
  const std::size_t nx = 1 + d.below(n - 1);
  const std::size_t ny = n - nx;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Values x;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      const std::int64_t v = d.value();
      total += v;
      x.emplace_back(v);
    }
    if (total < static_cast<std::int64_t>(ny)) continue;
    std::set<std::int64_t> cuts;
    while (cuts.size() + 1 < ny) cuts.insert(1 + static_cast<std::int64_t>(d.below(static_cast<std::uint64_t>(total - 1))));
    cuts.insert(total);
    Values y;
    std::int64_t prev = 0;
    for (std::int64_t c : cuts) {
      y.emplace_back(c - prev);
      prev = c;
    }
    std::vector<SlotKind> slots(nx, SlotKind::X);
    slots.resize(n, SlotKind::Y);
    d.shuffle(slots);
    return SlatedInstance(std::move(x), std::move(y), std::move(slots));
  }
  throw InvalidInstance("could not draw a random slated instance; widen the value range");
}

AnyInstance gen_random(InstanceKind kind, std::size_t n, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  switch (kind) {
    case InstanceKind::Alternating:
      return random_alternating(n, seed, lo, hi);
    case InstanceKind::Gasoline:
      return random_gasoline(n, seed, lo, hi);
    case InstanceKind::Slated:
      return random_slated(n, seed, lo, hi);
  }
  throw InvalidInstance("unknown instance kind");
}

}  // namespace stockseq::instances
