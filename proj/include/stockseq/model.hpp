#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stockseq/rational.hpp"

namespace stockseq {

using Values = std::vector<Rational>;
using Permutation = std::vector<std::size_t>;

[[nodiscard]] Rational sum(std::span<const Rational> values);

/// Sort values nonincreasing (stable). Returns the sorted values and, for each
/// sorted position, the index the value had in the input.
struct SortedValues {
  Values values;
  std::vector<std::size_t> origin;
};
[[nodiscard]] SortedValues sort_nonincreasing(std::span<const Rational> values);

/// Two equal-size, equal-sum sets of positive jobs. Both sides are held sorted
/// nonincreasing; origin maps recover the caller's order.
class AlternatingInstance {
 public:
  AlternatingInstance(Values x, Values y);

  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] const Values& x() const { return x_; }
  [[nodiscard]] const Values& y() const { return y_; }
  [[nodiscard]] const std::vector<std::size_t>& x_origin() const { return x_origin_; }
  [[nodiscard]] const std::vector<std::size_t>& y_origin() const { return y_origin_; }

  [[nodiscard]] const Rational& mu_x() const { return x_.front(); }
  [[nodiscard]] const Rational& mu_y() const { return y_.front(); }
  [[nodiscard]] Rational mu() const { return mu_x() < mu_y() ? mu_y() : mu_x(); }

  /// The instance with the roles of X and Y exchanged.
  [[nodiscard]] AlternatingInstance swapped() const;

 private:
  Values x_;
  Values y_;
  std::vector<std::size_t> x_origin_;
  std::vector<std::size_t> y_origin_;
};

/// Permutable x-jobs (held sorted) placed between y-values in a fixed order.
class GasolineInstance {
 public:
  GasolineInstance(Values x, Values y);

  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] const Values& x() const { return x_; }
  [[nodiscard]] const Values& y() const { return y_; }
  [[nodiscard]] const std::vector<std::size_t>& x_origin() const { return x_origin_; }
  [[nodiscard]] bool balanced() const { return balanced_; }
  [[nodiscard]] const Rational& mu_x() const { return x_.front(); }

 private:
  Values x_;
  Values y_;
  std::vector<std::size_t> x_origin_;
  bool balanced_ = false;
};

enum class SlotKind { X, Y };

[[nodiscard]] std::vector<SlotKind> parse_slots(std::string_view pattern);
[[nodiscard]] std::string format_slots(std::span<const SlotKind> slots);

/// Slot pattern over {X, Y} with one job of the matching kind per slot.
/// Both job sides are held sorted nonincreasing and must have equal sums.
class SlatedInstance {
 public:
  SlatedInstance(Values x, Values y, std::vector<SlotKind> slots);

  [[nodiscard]] const Values& x() const { return x_; }
  [[nodiscard]] const Values& y() const { return y_; }
  [[nodiscard]] const std::vector<std::size_t>& x_origin() const { return x_origin_; }
  [[nodiscard]] const std::vector<std::size_t>& y_origin() const { return y_origin_; }
  [[nodiscard]] const std::vector<SlotKind>& slots() const { return slots_; }
  [[nodiscard]] std::size_t slot_count() const { return slots_.size(); }
  [[nodiscard]] const Rational& mu_x() const { return x_.front(); }
  [[nodiscard]] const Rational& mu_y() const { return y_.front(); }

 private:
  Values x_;
  Values y_;
  std::vector<std::size_t> x_origin_;
  std::vector<std::size_t> y_origin_;
  std::vector<SlotKind> slots_;
};

enum class InstanceKind { Alternating, Gasoline, Slated };

using AnyInstance = std::variant<AlternatingInstance, GasolineInstance, SlatedInstance>;

[[nodiscard]] InstanceKind kind_of(const AnyInstance& inst);
[[nodiscard]] std::string_view kind_name(InstanceKind kind);  // "alternating", "gasoline", "slated"
[[nodiscard]] std::optional<InstanceKind> parse_kind(std::string_view name);

/// sigma[t] is the x-job (sorted index) placed at the t-th x position,
/// nu[t] the y-job at the t-th y position. For gasoline instances nu is the
/// identity over the fixed y order.
struct Arrangement {
  Permutation sigma;
  Permutation nu;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

[[nodiscard]] bool is_permutation(std::span<const std::size_t> p, std::size_t n);
[[nodiscard]] Permutation identity_permutation(std::size_t n);

/// Evaluated prefix-sum profile. beta and alpha include the empty prefix, so
/// beta >= 0 >= alpha always holds.
struct StockProfile {
  Values prefix_values;
  Rational beta;
  Rational alpha;
  Rational eta;
  bool feasible = false;

  friend bool operator==(const StockProfile&, const StockProfile&) = default;
};

/// Builds a profile from the signed job sequence.
[[nodiscard]] StockProfile profile_of_sequence(std::span<const Rational> signed_jobs);

[[nodiscard]] StockProfile evaluate_alternating(const AlternatingInstance& inst, const Arrangement& arr);
[[nodiscard]] StockProfile evaluate_gasoline(const GasolineInstance& inst, std::span<const std::size_t> pi);
[[nodiscard]] StockProfile evaluate_slated(const SlatedInstance& inst, const Arrangement& arr);

/// Pair-aligned cyclic rotation that starts right after the leftmost minimum
/// prefix at a pair boundary. The offset is the number of leading pairs moved
/// to the back.
struct Rotation {
  Arrangement arrangement;
  std::size_t offset = 0;
};
[[nodiscard]] Rotation rotate_with_offset(const AlternatingInstance& inst, const Arrangement& arr);
[[nodiscard]] Arrangement rotate_to_feasible(const AlternatingInstance& inst, const Arrangement& arr);

/// Maps an arrangement of `inst.swapped()` back to `inst` by reversing the
/// sequence; the set of prefix values is preserved exactly.
[[nodiscard]] Arrangement unswap_arrangement(const Arrangement& swapped_arr);

}  // namespace stockseq
