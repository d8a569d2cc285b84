#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stockseq/model.hpp"
#include "stockseq/simplex.hpp"

// LP relaxation of the gasoline problem and the transform/round pipeline that
// turns an optimal fractional assignment into a permutation losing at most
// mu_x. Rows are x-jobs (sorted nonincreasing), columns are positions.
namespace stockseq::gasoline {

using Grid = std::vector<std::vector<Rational>>;

class DSMatrix {
 public:
  /// `entries` is n x n, row i belongs to x[i]. The doubly stochastic
  /// property is not enforced here; see is_doubly_stochastic().
  DSMatrix(Grid entries, Values x);

  /// pi[j] is the row placed at column j.
  static DSMatrix from_permutation(std::span<const std::size_t> pi, Values x);

  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  [[nodiscard]] const Grid& entries() const { return entries_; }
  [[nodiscard]] const Values& x() const { return x_; }
  [[nodiscard]] const Values& col_values() const { return col_values_; }
  [[nodiscard]] std::vector<Rational> column(std::size_t j) const;

  /// Replaces column j and refreshes col_values[j].
  void set_column(std::size_t j, std::span<const Rational> col);

  /// Sum of row i over columns 0..j.
  [[nodiscard]] Rational row_prefix(std::size_t i, std::size_t j) const;
  [[nodiscard]] bool row_finished(std::size_t i, std::size_t j) const { return row_prefix(i, j) == Rational(1); }

  [[nodiscard]] bool is_doubly_stochastic() const;
  [[nodiscard]] bool is_permutation_matrix() const;

  friend bool operator==(const DSMatrix&, const DSMatrix&) = default;

 private:
  Grid entries_;
  Values x_;
  Values col_values_;
};

/// Column j of the result is the sum of columns 0..j.
[[nodiscard]] Grid cumulative(const DSMatrix& m);

/// Variables z_ij (index i*n+j), beta and a = -alpha, all nonnegative.
/// Objective: minimize beta + a.
struct GasolineLp {
  lp::Problem problem;
  std::size_t n = 0;
  std::size_t beta_var = 0;
  std::size_t a_var = 0;

  [[nodiscard]] std::size_t z(std::size_t i, std::size_t j) const { return i * n + j; }
};

[[nodiscard]] GasolineLp build_lp(const GasolineInstance& inst);

struct LpSolution {
  DSMatrix matrix;
  Rational alpha;  // <= 0
  Rational beta;   // >= 0
  std::size_t pivots = 0;

  [[nodiscard]] Rational eta() const { return beta - alpha; }
};

[[nodiscard]] LpSolution solve_lp(const GasolineInstance& inst);

/// Checks the prefix constraints: for every k, the x-value placed so far
/// minus y_0..y_{k-1} is at most beta, and minus y_0..y_k at least alpha.
[[nodiscard]] bool lp_feasible(const GasolineInstance& inst, const DSMatrix& m, const Rational& alpha,
                               const Rational& beta);

/// Moves delta into row i2 of column j, taking it from rows i1 and i3 in the
/// proportion that keeps the column value unchanged. Requires i1 < i2 < i3.
[[nodiscard]] std::vector<Rational> shift(const DSMatrix& z, std::size_t j, std::size_t i1, std::size_t i2,
                                          std::size_t i3, const Rational& delta);

struct TransformStep {
  std::size_t j = 0;
  std::size_t j_prime = 0;
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::size_t i3 = 0;
  Rational delta;
};

/// Shift in column j and the reverse shift in the next column where row i2
/// is positive, with the largest delta keeping entries in [0, 1]. Throws
/// InvalidTransform when the index preconditions fail.
[[nodiscard]] DSMatrix transform(const DSMatrix& z, std::size_t j, std::size_t i1, std::size_t i2, std::size_t i3,
                                 TransformStep* step = nullptr);

struct ConsecutiveResult {
  DSMatrix matrix;
  std::size_t transforms = 0;
  std::vector<TransformStep> trace{};  // filled only when requested
};

/// Repeatedly transforms the first violating column (smallest j, outermost
/// positive rows, first unfinished row between them) until no violation is
/// left. Selection variants are checked on every step.
[[nodiscard]] ConsecutiveResult enforce_consecutiveness(const DSMatrix& z, bool keep_trace = false);

/// In every column, rows strictly between two positive entries are finished.
[[nodiscard]] bool check_consecutiveness(const DSMatrix& t);

struct Block {
  std::vector<std::size_t> rows;  // ascending
  Rational value;                 // sum of cumulative entries over the rows
  bool finished = false;
};

/// Connected components of the row graph after columns 0..column.
struct BlockSnapshot {
  std::size_t column = 0;
  std::vector<Block> blocks;          // ordered by smallest row
  std::vector<std::size_t> block_of;  // row -> index into blocks
  std::size_t active = 0;             // block holding this column's positive rows
};

/// Requires a consecutive matrix. At every column checks that a finished
/// block of value k has k rows and an unfinished one k+1, that the partition
/// changed by one merge of two unfinished blocks or by finishing one, and
/// that unfinished blocks span disjoint row intervals. Throws
/// InternalConsistency on violation.
[[nodiscard]] std::vector<BlockSnapshot> block_scan(const DSMatrix& t);

struct Rounding {
  DSMatrix matrix;
  Permutation pi;             // pi[j] = row placed at column j
  Values prefix_error;        // sum_{j<=k} (r_j - t_j) for each k
};

/// Places the smallest still-unused row of the active block at each column.
/// Checks the block/row bookkeeping and that every prefix error lies in
/// [0, mu_x]; throws InternalConsistency otherwise.
[[nodiscard]] Rounding round(const DSMatrix& t);

struct Certificate {
  Rational eta_lp;
  Rational alpha_lp;
  Rational beta_lp;
  Rational mu_x;
  Rational bound;  // eta_lp + mu_x
  std::size_t transform_count = 0;
  std::size_t lp_pivots = 0;
};

struct GasolineResult {
  Permutation pi;  // sorted x index per position
  StockProfile profile;
  Certificate certificate;
  std::vector<TransformStep> trace;
};

/// LP, consecutiveness, rounding. The returned profile has eta at most
/// eta_lp + mu_x; the (R, alpha, beta + mu_x) feasibility is re-checked.
[[nodiscard]] GasolineResult gasoline_2approx(const GasolineInstance& inst, bool keep_trace = false);

/// One line per step: j,j_prime,i1,i2,i3,delta (0-based indices).
[[nodiscard]] std::string trace_csv(std::span<const TransformStep> trace);

}  // namespace stockseq::gasoline
