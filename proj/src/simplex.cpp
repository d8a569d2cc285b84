#include "stockseq/simplex.hpp"

#include "stockseq/errors.hpp"

namespace stockseq::lp {

void Problem::add_constraint(std::vector<Term> terms, Sense sense, Rational rhs) {
  for (const auto& t : terms) {
    if (t.var >= variables_) throw LpError("constraint refers to an unknown variable");
  }
  constraints_.push_back(Constraint{std::move(terms), sense, std::move(rhs)});
}

namespace {

// Rows hold B^-1 A with the right-hand side in the last column. `cost` is the
// reduced-cost row with -objective in its last entry.
struct Tableau {
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> basis;
  std::vector<Rational> cost;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = rows[r];
    const Rational inv = Rational(1) / prow[c];
    for (auto& e : prow) {
      if (!e.is_zero()) e *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!prow[j].is_zero()) row[j] -= f * prow[j];
      }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(cost);
    basis[r] = c;
    ++pivots;
  }

  void price(const std::vector<Rational>& c) {
    cost.assign(cols + 1, Rational());
    for (std::size_t j = 0; j < cols; ++j) cost[j] = c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = c[basis[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!rows[i][j].is_zero()) cost[j] -= cb * rows[i][j];
      }
    }
  }

  // Returns false when unbounded.
  bool optimize(std::size_t allowed_cols) {
    for (;;) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter].sign() <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution minimize(const Problem& problem) {
  const std::size_t n = problem.variable_count();
  const auto& cons = problem.constraints();
  const std::size_t m = cons.size();

  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& c : cons) {
    const bool flip = c.rhs.sign() < 0;
    Sense s = c.sense;
    if (flip && s != Sense::Equal) s = s == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    if (s != Sense::Equal) ++slack_count;
    if (s != Sense::LessEqual) ++artificial_count;
  }

  Tableau t;
  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slack_count;
  t.cols = n + slack_count + artificial_count;
  t.rows.assign(m, std::vector<Rational>(t.cols + 1));
  t.basis.assign(m, 0);

  std::size_t next_slack = first_slack;
  std::size_t next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cons[i];
    const bool flip = c.rhs.sign() < 0;
    Sense s = c.sense;
    if (flip && s != Sense::Equal) s = s == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    auto& row = t.rows[i];
    for (const auto& term : c.terms) row[term.var] += flip ? -term.coef : term.coef;
    row[t.cols] = flip ? -c.rhs : c.rhs;
    if (s == Sense::LessEqual) {
      row[next_slack] = 1;
      t.basis[i] = next_slack++;
    } else {
      if (s == Sense::GreaterEqual) row[next_slack++] = -1;
      row[next_artificial] = 1;
      t.basis[i] = next_artificial++;
    }
  }

  if (artificial_count > 0) {
    std::vector<Rational> phase1(t.cols);
    for (std::size_t j = first_artificial; j < t.cols; ++j) phase1[j] = 1;
    t.price(phase1);
    if (!t.optimize(t.cols)) throw LpError("phase one unbounded; tableau is corrupt");
    if (!t.cost[t.cols].is_zero()) throw LpError("linear program is infeasible");
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and get dropped.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (!t.rows[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col == first_artificial) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<Rational> phase2(t.cols);
  for (const auto& term : problem.objective()) {
    if (term.var >= n) throw LpError("objective refers to an unknown variable");
    phase2[term.var] += term.coef;
  }
  t.price(phase2);
  if (!t.optimize(first_artificial)) throw LpError("linear program is unbounded");

  Solution sol;
  sol.values.assign(n, Rational());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) sol.values[t.basis[i]] = t.rows[i][t.cols];
  }
  sol.objective = -t.cost[t.cols];
  sol.pivots = t.pivots;
  return sol;
}

bool satisfies(const Problem& problem, const std::vector<Rational>& values) {
  if (values.size() != problem.variable_count()) return false;
  for (const auto& v : values) {
    if (v.sign() < 0) return false;
  }
  for (const auto& c : problem.constraints()) {
    Rational lhs;
    for (const auto& term : c.terms) lhs += term.coef * values[term.var];
    switch (c.sense) {
      case Sense::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Sense::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Sense::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace stockseq::lp
