#include "stockseq/gasoline.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "stockseq/errors.hpp"

namespace stockseq::gasoline {

DSMatrix::DSMatrix(Grid entries, Values x) : entries_(std::move(entries)), x_(std::move(x)) {
  const std::size_t n = x_.size();
  if (entries_.size() != n) throw InvalidInstance("matrix row count differs from the number of x-jobs");
  for (const auto& row : entries_) {
    if (row.size() != n) throw InvalidInstance("matrix must be square");
  }
  col_values_.assign(n, Rational());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!entries_[i][j].is_zero()) col_values_[j] += entries_[i][j] * x_[i];
    }
  }
}

DSMatrix DSMatrix::from_permutation(std::span<const std::size_t> pi, Values x) {
  const std::size_t n = x.size();
  if (!is_permutation(pi, n)) throw InvalidArrangement("not a permutation of the rows");
  Grid g(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) g[pi[j]][j] = 1;
  return DSMatrix(std::move(g), std::move(x));
}

std::vector<Rational> DSMatrix::column(std::size_t j) const {
  std::vector<Rational> col;
  col.reserve(size());
  for (const auto& row : entries_) col.push_back(row[j]);
  return col;
}

void DSMatrix::set_column(std::size_t j, std::span<const Rational> col) {
  if (col.size() != size()) throw InvalidTransform("column has the wrong length");
  Rational value;
  for (std::size_t i = 0; i < size(); ++i) {
    entries_[i][j] = col[i];
    if (!col[i].is_zero()) value += col[i] * x_[i];
  }
  col_values_[j] = value;
}

Rational DSMatrix::row_prefix(std::size_t i, std::size_t j) const {
  Rational s;
  for (std::size_t c = 0; c <= j; ++c) s += entries_[i][c];
  return s;
}

bool DSMatrix::is_doubly_stochastic() const {
  const std::size_t n = size();
  const Rational one(1);
  std::vector<Rational> col_sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational row_sum;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& e = entries_[i][j];
      if (e.sign() < 0 || e > one) return false;
      row_sum += e;
      col_sum[j] += e;
    }
    if (row_sum != one) return false;
  }
  return std::all_of(col_sum.begin(), col_sum.end(), [&](const Rational& c) { return c == one; });
}

bool DSMatrix::is_permutation_matrix() const {
  if (!is_doubly_stochastic()) return false;
  for (const auto& row : entries_) {
    for (const auto& e : row) {
      if (!e.is_zero() && e != Rational(1)) return false;
    }
  }
  return true;
}

Grid cumulative(const DSMatrix& m) {
  Grid c = m.entries();
  for (auto& row : c) {
    for (std::size_t j = 1; j < row.size(); ++j) row[j] += row[j - 1];
  }
  return c;
}

GasolineLp build_lp(const GasolineInstance& inst) {
  const std::size_t n = inst.size();
  GasolineLp out;
  out.n = n;
  out.problem = lp::Problem(n * n + 2);
  out.beta_var = n * n;
  out.a_var = n * n + 1;
  auto& p = out.problem;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<lp::Term> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back({out.z(i, j), Rational(1)});
    p.add_constraint(std::move(row), lp::Sense::Equal, Rational(1));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<lp::Term> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back({out.z(i, j), Rational(1)});
    p.add_constraint(std::move(col), lp::Sense::Equal, Rational(1));
  }

  Rational y_before;  // y_0 + ... + y_{k-1}
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<lp::Term> placed;
    for (std::size_t j = 0; j <= k; ++j) {
      for (std::size_t i = 0; i < n; ++i) placed.push_back({out.z(i, j), inst.x()[i]});
    }
    auto upper = placed;
    upper.push_back({out.beta_var, Rational(-1)});
    p.add_constraint(std::move(upper), lp::Sense::LessEqual, y_before);
    const Rational y_through = y_before + inst.y()[k];
    placed.push_back({out.a_var, Rational(1)});
    p.add_constraint(std::move(placed), lp::Sense::GreaterEqual, y_through);
    y_before = y_through;
  }
  p.set_objective({{out.beta_var, Rational(1)}, {out.a_var, Rational(1)}});
  return out;
}

LpSolution solve_lp(const GasolineInstance& inst) {
  const GasolineLp model = build_lp(inst);
  const lp::Solution sol = lp::minimize(model.problem);
  const std::size_t n = model.n;
  Grid g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[i][j] = sol.values[model.z(i, j)];
  }
  LpSolution out{DSMatrix(std::move(g), inst.x()), -sol.values[model.a_var], sol.values[model.beta_var],
                 sol.pivots};
  if (!out.matrix.is_doubly_stochastic() || !lp_feasible(inst, out.matrix, out.alpha, out.beta)) {
    throw InternalConsistency("simplex returned a point outside the gasoline LP");
  }
  return out;
}

bool lp_feasible(const GasolineInstance& inst, const DSMatrix& m, const Rational& alpha, const Rational& beta) {
  if (m.size() != inst.size() || beta.sign() < 0 || alpha.sign() > 0) return false;
  Rational level;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    level += m.col_values()[k];
    if (level > beta) return false;
    level -= inst.y()[k];
    if (level < alpha) return false;
  }
  return true;
}

namespace {

struct Split {
  Rational c1;  // share taken from row i1
  Rational c3;  // share taken from row i3
};

Split split_for(const Values& x, std::size_t i1, std::size_t i2, std::size_t i3) {
  if (x[i1] == x[i3]) return {Rational(1), Rational(0)};
  const Rational span = x[i1] - x[i3];
  return {(x[i2] - x[i3]) / span, (x[i1] - x[i2]) / span};
}

void check_rows(const DSMatrix& z, std::size_t i1, std::size_t i2, std::size_t i3, std::size_t j) {
  const std::size_t n = z.size();
  if (!(i1 < i2 && i2 < i3 && i3 < n)) throw InvalidTransform("transform needs i1 < i2 < i3 < n");
  if (j >= n) throw InvalidTransform("column index out of range");
  if (z.x()[i1] < z.x()[i2] || z.x()[i2] < z.x()[i3]) throw InvalidTransform("rows must be sorted by x");
}

}  // namespace

std::vector<Rational> shift(const DSMatrix& z, std::size_t j, std::size_t i1, std::size_t i2, std::size_t i3,
                            const Rational& delta) {
  check_rows(z, i1, i2, i3, j);
  std::vector<Rational> a = z.column(j);
  const Split s = split_for(z.x(), i1, i2, i3);
  a[i2] += delta;
  a[i1] -= delta * s.c1;
  a[i3] -= delta * s.c3;
  return a;
}

DSMatrix transform(const DSMatrix& z, std::size_t j, std::size_t i1, std::size_t i2, std::size_t i3,
                   TransformStep* step) {
  check_rows(z, i1, i2, i3, j);
  if (z.at(i1, j).sign() <= 0 || z.at(i3, j).sign() <= 0) throw InvalidTransform("rows i1 and i3 must be positive in column j");
  if (z.row_finished(i2, j)) throw InvalidTransform("row i2 is already finished at column j");
  std::size_t jp = j + 1;
  while (jp < z.size() && z.at(i2, jp).is_zero()) ++jp;
  if (jp == z.size()) throw InvalidTransform("row i2 has no positive entry after column j");

  const Split s = split_for(z.x(), i1, i2, i3);
  const Rational one(1);
  // Largest delta: entries of column j move toward 0 (rows i1, i3) or 1
  // (row i2); in column j' the directions are reversed.
  Rational delta = one - z.at(i2, j);
  auto tighten = [&](const Rational& room, const Rational& rate) {
    if (rate.sign() > 0) delta = std::min(delta, room / rate);
  };
  tighten(z.at(i1, j), s.c1);
  tighten(z.at(i3, j), s.c3);
  tighten(z.at(i2, jp), one);
  tighten(one - z.at(i1, jp), s.c1);
  tighten(one - z.at(i3, jp), s.c3);
  if (delta.sign() <= 0) throw InternalConsistency("transform step size is not positive");

  DSMatrix out = z;
  out.set_column(j, shift(z, j, i1, i2, i3, delta));
  out.set_column(jp, shift(z, jp, i1, i2, i3, -delta));
  if (out.col_values()[j] != z.col_values()[j] || out.col_values()[jp] != z.col_values()[jp]) {
    throw InternalConsistency("transform changed a column value");
  }
  if (!out.is_doubly_stochastic()) throw InternalConsistency("transform left the doubly stochastic set");
  if (step != nullptr) *step = TransformStep{j, jp, i1, i2, i3, delta};
  return out;
}

namespace {

struct Violation {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::size_t i3 = 0;
};

std::optional<Violation> find_violation(const DSMatrix& t, std::size_t j) {
  const std::size_t n = t.size();
  std::size_t i1 = n;
  std::size_t i3 = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (t.at(i, j).sign() > 0) {
      if (i1 == n) i1 = i;
      i3 = i;
    }
  }
  if (i1 == n || i1 == i3) return std::nullopt;
  for (std::size_t i2 = i1 + 1; i2 < i3; ++i2) {
    if (!t.row_finished(i2, j)) return Violation{i1, i2, i3};
  }
  return std::nullopt;
}

}  // namespace

ConsecutiveResult enforce_consecutiveness(const DSMatrix& z, bool keep_trace) {
  if (!z.is_doubly_stochastic()) throw InvalidTransform("consecutiveness needs a doubly stochastic matrix");
  const std::size_t n = z.size();
  // Generous polynomial cap; the selection rule needs far fewer steps.
  const std::size_t cap = 4 * n * n * n * n + 16;
  ConsecutiveResult res{z};
  std::optional<TransformStep> prev;
  for (std::size_t j = 0; j < n;) {
    const auto v = find_violation(res.matrix, j);
    if (!v) {
      ++j;
      continue;
    }
    TransformStep step;
    res.matrix = transform(res.matrix, j, v->i1, v->i2, v->i3, &step);
    if (prev && prev->j == j) {
      bool ok = v->i1 >= prev->i1 && v->i3 <= prev->i3;
      if (ok && v->i1 == prev->i1 && v->i3 == prev->i3) {
        ok = v->i2 >= prev->i2;
        if (ok && v->i2 == prev->i2) ok = step.j_prime > prev->j_prime;
      }
      if (!ok) throw InternalConsistency("transform selection variant decreased");
    }
    if (prev && prev->j > j) throw InternalConsistency("transform column index decreased");
    prev = step;
    if (keep_trace) res.trace.push_back(step);
    if (++res.transforms > cap) throw InternalConsistency("consecutiveness loop exceeded its step cap");
  }
  if (res.matrix.col_values() != z.col_values()) throw InternalConsistency("column values changed");
  return res;
}

bool check_consecutiveness(const DSMatrix& t) {
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (find_violation(t, j)) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Checks the partition step from `prev` to `cur` at one column.
void check_evolution(const BlockSnapshot* prev, const BlockSnapshot& cur, std::size_t n) {
  std::vector<Block> before;
  std::vector<std::size_t> before_of(n);
  if (prev == nullptr) {
    for (std::size_t i = 0; i < n; ++i) {
      before.push_back(Block{{i}, Rational(), false});
      before_of[i] = i;
    }
  } else {
    before = prev->blocks;
    before_of = prev->block_of;
  }
  std::size_t merges = 0;
  std::size_t finishes = 0;
  for (std::size_t b = 0; b < cur.blocks.size(); ++b) {
    const Block& blk = cur.blocks[b];
    std::vector<std::size_t> sources;
    for (std::size_t r : blk.rows) sources.push_back(before_of[r]);
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    if (sources.size() == 1) {
      const Block& old = before[sources[0]];
      if (old.rows.size() != blk.rows.size()) throw InternalConsistency("a block lost rows");
      if (old.finished && !blk.finished) throw InternalConsistency("a finished block became unfinished");
      if (!old.finished && blk.finished) ++finishes;
    } else if (sources.size() == 2) {
      if (before[sources[0]].finished || before[sources[1]].finished) {
        throw InternalConsistency("a finished block was merged");
      }
      if (blk.finished) throw InternalConsistency("a merged block is already finished");
      ++merges;
    } else {
      throw InternalConsistency("more than two blocks merged in one column");
    }
  }
  if (merges + finishes != 1) throw InternalConsistency("block partition did not change by exactly one step");
}

}  // namespace

std::vector<BlockSnapshot> block_scan(const DSMatrix& t) {
  const std::size_t n = t.size();
  const Rational one(1);
  UnionFind uf(n);
  std::vector<Rational> c(n);
  std::vector<BlockSnapshot> snaps;
  snaps.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.at(i, j).sign() > 0) {
        if (first) uf.unite(*first, i);
        first = first.value_or(i);
        c[i] += t.at(i, j);
      }
    }
    if (!first) throw InternalConsistency("column without a positive entry");

    BlockSnapshot snap;
    snap.column = j;
    snap.block_of.assign(n, 0);
    std::vector<std::size_t> index_of_root(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = uf.find(i);
      if (index_of_root[r] == n) {
        index_of_root[r] = snap.blocks.size();
        snap.blocks.push_back(Block{{}, Rational(), true});
      }
      Block& blk = snap.blocks[index_of_root[r]];
      blk.rows.push_back(i);
      blk.value += c[i];
      if (c[i] != one) blk.finished = false;
      snap.block_of[i] = index_of_root[r];
    }
    snap.active = snap.block_of[*first];

    for (const Block& blk : snap.blocks) {
      const Rational rows(static_cast<std::int64_t>(blk.rows.size()));
      if (blk.value != (blk.finished ? rows : rows - one)) {
        throw InternalConsistency("block value does not match its row count at column " + std::to_string(j));
      }
    }
    check_evolution(snaps.empty() ? nullptr : &snaps.back(), snap, n);
    std::size_t last_hi = 0;
    bool any = false;
    for (const Block& blk : snap.blocks) {  // ordered by smallest row
      if (blk.finished) continue;
      if (any && blk.rows.front() <= last_hi) throw InternalConsistency("unfinished blocks overlap");
      last_hi = blk.rows.back();
      any = true;
    }
    snaps.push_back(std::move(snap));
  }
  return snaps;
}

Rounding round(const DSMatrix& t) {
  const std::size_t n = t.size();
  const auto snaps = block_scan(t);
  std::vector<char> used(n, 0);
  Permutation pi(n);
  Values errors;
  errors.reserve(n);
  Rational err;
  const Rational& mu_x = t.x().front();
  for (std::size_t j = 0; j < n; ++j) {
    const BlockSnapshot& snap = snaps[j];
    const Block& active = snap.blocks[snap.active];
    std::size_t p = n;
    for (std::size_t r : active.rows) {
      if (!used[r]) {
        p = r;
        break;
      }
    }
    if (p == n) throw InternalConsistency("active block has no unused row");
    used[p] = 1;
    pi[j] = p;
    for (const Block& blk : snap.blocks) {
      for (std::size_t k = 0; k < blk.rows.size(); ++k) {
        const bool last = k + 1 == blk.rows.size();
        const bool expect_used = blk.finished || !last;
        if (static_cast<bool>(used[blk.rows[k]]) != expect_used) {
          throw InternalConsistency("rounded rows disagree with the block structure at column " + std::to_string(j));
        }
      }
    }
    err += t.x()[p] - t.col_values()[j];
    if (err.sign() < 0 || err > mu_x) throw InternalConsistency("prefix rounding error left [0, mu_x]");
    errors.push_back(err);
  }
  return Rounding{DSMatrix::from_permutation(pi, t.x()), std::move(pi), std::move(errors)};
}

GasolineResult gasoline_2approx(const GasolineInstance& inst, bool keep_trace) {
  const LpSolution lp = solve_lp(inst);
  ConsecutiveResult cons = enforce_consecutiveness(lp.matrix, keep_trace);
  if (!lp_feasible(inst, cons.matrix, lp.alpha, lp.beta)) throw InternalConsistency("transform broke LP feasibility");
  Rounding r = round(cons.matrix);

  GasolineResult res;
  res.certificate.eta_lp = lp.eta();
  res.certificate.alpha_lp = lp.alpha;
  res.certificate.beta_lp = lp.beta;
  res.certificate.mu_x = inst.mu_x();
  res.certificate.bound = lp.eta() + inst.mu_x();
  res.certificate.transform_count = cons.transforms;
  res.certificate.lp_pivots = lp.pivots;
  if (!lp_feasible(inst, r.matrix, lp.alpha, lp.beta + inst.mu_x())) {
    throw InternalConsistency("rounded matrix is not feasible for (alpha, beta + mu_x)");
  }
  res.profile = evaluate_gasoline(inst, r.pi);
  if (res.profile.eta > res.certificate.bound) throw InternalConsistency("rounded value exceeds eta_lp + mu_x");
  res.pi = std::move(r.pi);
  res.trace = std::move(cons.trace);
  return res;
}

std::string trace_csv(std::span<const TransformStep> trace) {
  std::ostringstream out;
  out << "j,j_prime,i1,i2,i3,delta\n";
  for (const auto& s : trace) {
    out << s.j << ',' << s.j_prime << ',' << s.i1 << ',' << s.i2 << ',' << s.i3 << ',' << s.delta.to_string() << '\n';
  }
  return out.str();
}

}  // namespace stockseq::gasoline
