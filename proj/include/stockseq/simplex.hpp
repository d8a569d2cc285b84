#pragma once

#include <cstddef>
#include <vector>

#include "stockseq/rational.hpp"

// Exact two-phase primal simplex over rationals. Small dense problems only;
// every variable is implicitly >= 0.
namespace stockseq::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  std::size_t var = 0;
  Rational coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::Equal;
  Rational rhs;
};

class Problem {
 public:
  Problem() = default;
  explicit Problem(std::size_t variables) : variables_(variables) {}

  std::size_t add_variable() { return variables_++; }
  void add_constraint(std::vector<Term> terms, Sense sense, Rational rhs);
  /// Objective to minimize. Unlisted variables have cost 0.
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

  [[nodiscard]] std::size_t variable_count() const { return variables_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
  [[nodiscard]] const std::vector<Term>& objective() const { return objective_; }

 private:
  std::size_t variables_ = 0;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
};

struct Solution {
  Rational objective;
  std::vector<Rational> values;
  std::size_t pivots = 0;
};

/// Bland's rule throughout, so it always terminates. Throws LpError when the
/// problem is infeasible or unbounded.
[[nodiscard]] Solution minimize(const Problem& problem);

/// True when `values` is nonnegative and meets every constraint exactly.
[[nodiscard]] bool satisfies(const Problem& problem, const std::vector<Rational>& values);

}  // namespace stockseq::lp
