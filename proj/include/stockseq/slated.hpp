#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stockseq/gasoline.hpp"
#include "stockseq/model.hpp"

namespace stockseq::slated {

enum class SlotRole { Free, Fixed };

/// Which sign the permutable jobs carry; fixed jobs carry the other one.
enum class FreeSide { Add, Subtract };

/// Jobs of one side are pinned to slots, the other side's jobs fill the
/// remaining slots in any order.
struct GeneralizedGasolineInstance {
  std::vector<SlotRole> slots;
  Values fixed;      // one value per Fixed slot, in slot order, >= 0
  Values free_jobs;  // one job per Free slot, > 0
  FreeSide side = FreeSide::Add;
};

/// assignment[k] is the index into free_jobs placed at the k-th free slot.
[[nodiscard]] StockProfile evaluate_generalized(const GeneralizedGasolineInstance& g,
                                                std::span<const std::size_t> assignment);

/// Gasoline instance with the same optimum. Runs of fixed slots collapse to
/// one y, consecutive free slots get a zero y between them. A pattern that
/// starts with a fixed slot is reversed (if it ends with a free slot) or
/// rotated to its first free slot (if the sequence is balanced); anything
/// else throws InvalidInstance.
struct GasolineReduction {
  GasolineInstance gasoline;
  std::vector<std::size_t> position_of_free;  // k-th free slot -> gasoline position
  bool reversed = false;
  std::size_t rotation = 0;  // first original slot of the rotated sequence
};

[[nodiscard]] GasolineReduction reduce_to_gasoline(const GeneralizedGasolineInstance& g);

/// Maps a gasoline permutation (sorted x index per position) to an
/// assignment for the generalized instance.
[[nodiscard]] std::vector<std::size_t> translate_back(const GasolineReduction& r, std::span<const std::size_t> pi);

struct GeneralizedResult {
  std::vector<std::size_t> assignment;
  StockProfile profile;
  gasoline::Certificate certificate;  // mu_x is the largest free job
};

[[nodiscard]] GeneralizedResult solve_generalized(const GeneralizedGasolineInstance& g);

/// x-values fixed in sequence order, y-values permutable:
/// x_0, y_pi(0), x_1, y_pi(1), ...
struct YPermutableInstance {
  Values x;
  Values y;
};

/// Result assignment[t] is the index into y placed after x_t. The value is at
/// most the LP value plus the largest y.
[[nodiscard]] GeneralizedResult permute_y_variant(const YPermutableInstance& inst);

/// Variables: z^x (job i, x-slot s), z^y (job i, y-slot s), beta, a = -alpha.
struct SlatedLp {
  lp::Problem problem;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t beta_var = 0;
  std::size_t a_var = 0;

  [[nodiscard]] std::size_t zx(std::size_t i, std::size_t s) const { return i * nx + s; }
  [[nodiscard]] std::size_t zy(std::size_t i, std::size_t s) const { return nx * nx + i * ny + s; }
};

/// Every prefix of the slot pattern lies within [alpha, beta]; minimize beta - alpha.
[[nodiscard]] SlatedLp build_slated_lp(const SlatedInstance& inst);

struct SlatedLpSolution {
  gasoline::Grid zx;
  gasoline::Grid zy;
  Rational alpha;
  Rational beta;

  [[nodiscard]] Rational eta() const { return beta - alpha; }
};

[[nodiscard]] SlatedLpSolution solve_slated_lp(const SlatedInstance& inst);

/// YFirst: freeze fractional x per slot, place y, then place x against the
/// placed y. XFirst is the mirrored order.
enum class PhaseOrder { YFirst, XFirst };

struct SlatedCertificate {
  Rational eta_lp;
  Rational mu_x;
  Rational mu_y;
  Rational phase1_value;  // profile value after the first phase (fractional other side)
  Rational phase1_bound;  // eta_lp + mu of the side placed first
  Rational bound;         // eta_lp + mu_x + mu_y
};

struct SlatedResult {
  Arrangement arrangement;  // sorted indices per x-slot and per y-slot
  StockProfile profile;
  SlatedCertificate certificate;
};

[[nodiscard]] SlatedResult slated_3approx(const SlatedInstance& inst, PhaseOrder order = PhaseOrder::YFirst);

}  // namespace stockseq::slated
