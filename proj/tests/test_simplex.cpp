#include <doctest.h>

#include <optional>
#include <random>

#include "stockseq/errors.hpp"
#include "stockseq/simplex.hpp"
#include "support/support.hpp"

using stockseq::Rational;
using namespace stockseq::lp;

namespace {
// Two-variable LPs: the optimum sits on a vertex, so intersect every pair of
// boundary lines (axes included) and keep the best feasible point.
struct Line {
  Rational a, b, c;  // a u + b v = c
};

std::optional<Rational> vertex_oracle(const Problem& p) {
  std::vector<Line> lines{{1, 0, 0}, {0, 1, 0}};
  for (const auto& con : p.constraints()) {
    Line l{0, 0, con.rhs};
    for (const auto& t : con.terms) (t.var == 0 ? l.a : l.b) += t.coef;
    lines.push_back(l);
  }
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (det.is_zero()) continue;
      const Rational u = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
      const Rational v = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
      if (!satisfies(p, {u, v})) continue;
      Rational obj;
      for (const auto& t : p.objective()) obj += t.coef * (t.var == 0 ? u : v);
      if (!best || obj < *best) best = obj;
    }
  }
  return best;
}
}  // namespace

TEST_CASE("simplex small problems") {
  {
    // min -u - v, u + 2v <= 4, 3u + v <= 6
    Problem p(2);
    p.add_constraint({{0, 1}, {1, 2}}, Sense::LessEqual, 4);
    p.add_constraint({{0, 3}, {1, 1}}, Sense::LessEqual, 6);
    p.set_objective({{0, -1}, {1, -1}});
    const auto s = minimize(p);
    CHECK(s.objective == Rational(-14, 5));
    CHECK(satisfies(p, s.values));
  }
  {
    // equality plus >= with a negative right-hand side
    Problem p(3);
    p.add_constraint({{0, 1}, {1, 1}, {2, 1}}, Sense::Equal, 1);
    p.add_constraint({{0, -1}, {1, 1}}, Sense::GreaterEqual, Rational(-1, 2));
    p.set_objective({{0, -2}, {1, 1}, {2, 1}});
    const auto s = minimize(p);
    CHECK(s.objective == Rational(-5, 4));
    CHECK(satisfies(p, s.values));
  }
  {
    // redundant equality rows
    Problem p(2);
    p.add_constraint({{0, 1}, {1, 1}}, Sense::Equal, 2);
    p.add_constraint({{0, 2}, {1, 2}}, Sense::Equal, 4);
    p.set_objective({{0, 1}});
    const auto s = minimize(p);
    CHECK(s.objective == Rational(0));
    CHECK(s.values[1] == Rational(2));
  }
}

TEST_CASE("simplex errors") {
  Problem infeasible(1);
  infeasible.add_constraint({{0, 1}}, Sense::LessEqual, -1);
  CHECK_THROWS_AS((void)minimize(infeasible), stockseq::LpError);

  Problem unbounded(1);
  unbounded.set_objective({{0, -1}});
  CHECK_THROWS_AS((void)minimize(unbounded), stockseq::LpError);

  Problem p(1);
  CHECK_THROWS((void)p.add_constraint({{3, 1}}, Sense::Equal, 0));
}

TEST_CASE("simplex matches vertex enumeration") {
  std::mt19937_64 rng(3);
  int solved = 0;
  for (int round = 0; round < 300; ++round) {
    Problem p(2);
    const int m = static_cast<int>(support::draw(rng, 1, 5));
    for (int k = 0; k < m; ++k) {
      const auto sense = static_cast<Sense>(support::draw(rng, 0, 2));
      p.add_constraint({{0, Rational(support::draw(rng, -5, 5))}, {1, Rational(support::draw(rng, -5, 5))}},
                       sense, Rational(support::draw(rng, -6, 12), static_cast<std::int64_t>(support::draw(rng, 1, 3))));
    }
    // bounded box keeps the objective finite
    p.add_constraint({{0, 1}, {1, 1}}, Sense::LessEqual, 20);
    p.set_objective({{0, Rational(support::draw(rng, -4, 4))}, {1, Rational(support::draw(rng, -4, 4))}});
    const auto expected = vertex_oracle(p);
    if (!expected) {
      CHECK_THROWS_AS((void)minimize(p), stockseq::LpError);
      continue;
    }
    const auto s = minimize(p);
    CHECK(s.objective == *expected);
    CHECK(satisfies(p, s.values));
    ++solved;
  }
  CHECK(solved > 100);
}
