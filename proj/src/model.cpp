#include "stockseq/model.hpp"

#include <algorithm>
#include <numeric>

#include "stockseq/errors.hpp"

namespace stockseq {

Rational sum(std::span<const Rational> values) {
  Rational total;
  for (const auto& v : values) total += v;
  return total;
}

SortedValues sort_nonincreasing(std::span<const Rational> values) {
  SortedValues out;
  out.origin.resize(values.size());
  std::iota(out.origin.begin(), out.origin.end(), std::size_t{0});
  std::stable_sort(out.origin.begin(), out.origin.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  out.values.reserve(values.size());
  for (std::size_t i : out.origin) out.values.push_back(values[i]);
  return out;
}

namespace {

void require_positive(const Values& v, const char* side) {
  for (const auto& e : v) {
    if (e.sign() <= 0) throw InvalidInstance(std::string(side) + "-jobs must be positive, got " + e.to_string());
  }
}

}  // namespace

AlternatingInstance::AlternatingInstance(Values x, Values y) {
  if (x.size() != y.size()) throw InvalidInstance("alternating instance needs |x| = |y|");
  if (x.empty()) throw InvalidInstance("alternating instance must not be empty");
  require_positive(x, "x");
  require_positive(y, "y");
  if (sum(x) != sum(y)) throw InvalidInstance("alternating instance needs sum(x) = sum(y)");
  auto sx = sort_nonincreasing(x);
  auto sy = sort_nonincreasing(y);
  x_ = std::move(sx.values);
  x_origin_ = std::move(sx.origin);
  y_ = std::move(sy.values);
  y_origin_ = std::move(sy.origin);
}

AlternatingInstance AlternatingInstance::swapped() const {
  AlternatingInstance out = *this;
  std::swap(out.x_, out.y_);
  std::swap(out.x_origin_, out.y_origin_);
  return out;
}

GasolineInstance::GasolineInstance(Values x, Values y) {
  if (x.size() != y.size()) throw InvalidInstance("gasoline instance needs |x| = |y|");
  if (x.empty()) throw InvalidInstance("gasoline instance must not be empty");
  require_positive(x, "x");
  for (const auto& e : y) {
    if (e.sign() < 0) throw InvalidInstance("gasoline y-values must be nonnegative, got " + e.to_string());
  }
  balanced_ = sum(x) == sum(y);
  auto sx = sort_nonincreasing(x);
  x_ = std::move(sx.values);
  x_origin_ = std::move(sx.origin);
  y_ = std::move(y);
}

std::vector<SlotKind> parse_slots(std::string_view pattern) {
  std::vector<SlotKind> slots;
  slots.reserve(pattern.size());
  for (char c : pattern) {
    if (c == 'X' || c == 'x') {
      slots.push_back(SlotKind::X);
    } else if (c == 'Y' || c == 'y') {
      slots.push_back(SlotKind::Y);
    } else {
      throw InvalidInstance(std::string("slot pattern may only contain X and Y, got '") + c + "'");
    }
  }
  return slots;
}

std::string format_slots(std::span<const SlotKind> slots) {
  std::string s;
  s.reserve(slots.size());
  for (auto k : slots) s.push_back(k == SlotKind::X ? 'X' : 'Y');
  return s;
}

SlatedInstance::SlatedInstance(Values x, Values y, std::vector<SlotKind> slots) : slots_(std::move(slots)) {
  const auto nx = static_cast<std::size_t>(std::count(slots_.begin(), slots_.end(), SlotKind::X));
  const auto ny = slots_.size() - nx;
  if (nx != x.size() || ny != y.size()) throw InvalidInstance("slot counts do not match the job counts");
  if (x.empty() || y.empty()) throw InvalidInstance("slated instance needs at least one x-job and one y-job");
  require_positive(x, "x");
  require_positive(y, "y");
  if (sum(x) != sum(y)) throw InvalidInstance("slated instance needs sum(x) = sum(y)");
  auto sx = sort_nonincreasing(x);
  auto sy = sort_nonincreasing(y);
  x_ = std::move(sx.values);
  x_origin_ = std::move(sx.origin);
  y_ = std::move(sy.values);
  y_origin_ = std::move(sy.origin);
}

bool is_permutation(std::span<const std::size_t> p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

StockProfile profile_of_sequence(std::span<const Rational> signed_jobs) {
  StockProfile prof;
  prof.prefix_values.reserve(signed_jobs.size());
  Rational running;
  Rational hi;
  Rational lo;
  bool nonnegative = true;
  for (const auto& job : signed_jobs) {
    running += job;
    prof.prefix_values.push_back(running);
    if (running > hi) hi = running;
    if (running < lo) lo = running;
    if (running.sign() < 0) nonnegative = false;
  }
  prof.beta = hi;
  prof.alpha = lo;
  prof.eta = hi - lo;
  prof.feasible = nonnegative;
  return prof;
}

StockProfile evaluate_alternating(const AlternatingInstance& inst, const Arrangement& arr) {
  const std::size_t n = inst.size();
  if (!is_permutation(arr.sigma, n) || !is_permutation(arr.nu, n)) {
    throw InvalidArrangement("arrangement is not a pair of permutations of size " + std::to_string(n));
  }
  Values seq;
  seq.reserve(2 * n);
  for (std::size_t t = 0; t < n; ++t) {
    seq.push_back(inst.x()[arr.sigma[t]]);
    seq.push_back(-inst.y()[arr.nu[t]]);
  }
  return profile_of_sequence(seq);
}

StockProfile evaluate_gasoline(const GasolineInstance& inst, std::span<const std::size_t> pi) {
  const std::size_t n = inst.size();
  if (!is_permutation(pi, n)) throw InvalidArrangement("gasoline permutation has wrong size or repeats");
  Values seq;
  seq.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    seq.push_back(inst.x()[pi[j]]);
    seq.push_back(-inst.y()[j]);
  }
  return profile_of_sequence(seq);
}

StockProfile evaluate_slated(const SlatedInstance& inst, const Arrangement& arr) {
  if (!is_permutation(arr.sigma, inst.x().size()) || !is_permutation(arr.nu, inst.y().size())) {
    throw InvalidArrangement("slated arrangement does not match the slot counts");
  }
  Values seq;
  seq.reserve(inst.slot_count());
  std::size_t tx = 0;
  std::size_t ty = 0;
  for (auto kind : inst.slots()) {
    if (kind == SlotKind::X) {
      seq.push_back(inst.x()[arr.sigma[tx++]]);
    } else {
      seq.push_back(-inst.y()[arr.nu[ty++]]);
    }
  }
  return profile_of_sequence(seq);
}

InstanceKind kind_of(const AnyInstance& inst) { return static_cast<InstanceKind>(inst.index()); }

std::string_view kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Alternating:
      return "alternating";
    case InstanceKind::Gasoline:
      return "gasoline";
    case InstanceKind::Slated:
      return "slated";
  }
  return "unknown";
}

std::optional<InstanceKind> parse_kind(std::string_view name) {
  for (auto k : {InstanceKind::Alternating, InstanceKind::Gasoline, InstanceKind::Slated}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

Rotation rotate_with_offset(const AlternatingInstance& inst, const Arrangement& arr) {
  const auto prof = evaluate_alternating(inst, arr);
  const std::size_t n = inst.size();
  // Pair boundaries: 0 before the first pair, then after each y.
  std::size_t best = 0;
  Rational best_value;
  for (std::size_t t = 1; t < n; ++t) {
    const Rational& v = prof.prefix_values[2 * t - 1];
    if (v < best_value) {
      best_value = v;
      best = t;
    }
  }
  Rotation rot;
  rot.offset = best;
  rot.arrangement.sigma.reserve(n);
  rot.arrangement.nu.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t src = (best + t) % n;
    rot.arrangement.sigma.push_back(arr.sigma[src]);
    rot.arrangement.nu.push_back(arr.nu[src]);
  }
  return rot;
}

Arrangement rotate_to_feasible(const AlternatingInstance& inst, const Arrangement& arr) {
  return rotate_with_offset(inst, arr).arrangement;
}

Arrangement unswap_arrangement(const Arrangement& swapped_arr) {
  const std::size_t n = swapped_arr.sigma.size();
  Arrangement out;
  out.sigma.resize(n);
  out.nu.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.sigma[t] = swapped_arr.nu[n - 1 - t];
    out.nu[t] = swapped_arr.sigma[n - 1 - t];
  }
  return out;
}

}  // namespace stockseq
