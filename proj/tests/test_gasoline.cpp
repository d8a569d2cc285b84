#include <doctest.h>

#include <algorithm>

#include "stockseq/errors.hpp"
#include "stockseq/gasoline.hpp"
#include "stockseq/instances.hpp"
#include "stockseq/oracles.hpp"
#include "support/support.hpp"

using namespace stockseq;
using namespace stockseq::gasoline;

namespace {
const Rational half(1, 2);

DSMatrix half_weight_counterexample() {
  const auto inst = instances::gen_consecutiveness_example();
  Grid g(4, std::vector<Rational>(4));
  g[0][0] = g[0][2] = g[3][0] = g[3][2] = half;
  g[1][1] = g[1][3] = g[2][1] = g[2][3] = half;
  return DSMatrix(g, inst.x());
}

// Consecutiveness straight from the definition: between two positive
// entries of a column every row has row sum 1 up to that column.
bool naive_consecutive(const DSMatrix& t) {
  const std::size_t n = t.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = a + 2; c < n; ++c) {
        if (t.at(a, j).is_zero() || t.at(c, j).is_zero()) continue;
        for (std::size_t b = a + 1; b < c; ++b) {
          Rational s;
          for (std::size_t k = 0; k <= j; ++k) s += t.at(b, k);
          if (s != Rational(1)) return false;
        }
      }
    }
  }
  return true;
}
}  // namespace

TEST_CASE("matrix basics") {
  const Values x{Rational(5), Rational(3)};
  const auto p = DSMatrix::from_permutation(std::vector<std::size_t>{1, 0}, x);
  CHECK(p.is_permutation_matrix());
  CHECK(p.is_doubly_stochastic());
  CHECK(p.col_values() == Values{Rational(3), Rational(5)});
  CHECK(p.row_finished(1, 0));
  CHECK_FALSE(p.row_finished(0, 0));
  CHECK(cumulative(p)[0][1] == Rational(1));
  CHECK(check_consecutiveness(p));
}

TEST_CASE("LP construction") {
  const GasolineInstance two({Rational(2), Rational(1)}, {Rational(1), Rational(2)});
  const auto lp = build_lp(two);
  CHECK(lp.n == 2);
  CHECK(lp.problem.variable_count() == 6);
  std::size_t eq = 0, ineq = 0;
  for (const auto& c : lp.problem.constraints()) (c.sense == lp::Sense::Equal ? eq : ineq)++;
  CHECK(eq == 4);
  CHECK(ineq == 4);

  const GasolineInstance one({Rational(5)}, {Rational(5)});
  const auto s1 = solve_lp(one);
  CHECK(s1.matrix.at(0, 0) == Rational(1));
  CHECK(s1.eta() == Rational(5));
  const GasolineInstance short_y({Rational(5)}, {Rational(8)});
  CHECK(solve_lp(short_y).eta() == Rational(8));
}

TEST_CASE("LP examples") {
  // all x equal: every assignment is the same, the LP value is the fixed profile
  const auto gap = instances::gen_gasoline_gap(4);
  CHECK(solve_lp(gap).eta() == Rational(3));

  const auto ex = instances::gen_consecutiveness_example();
  const auto s = solve_lp(ex);
  CHECK(s.matrix.is_doubly_stochastic());
  CHECK(lp_feasible(ex, s.matrix, s.alpha, s.beta));
  CHECK(s.eta() <= oracles::exact_gasoline(ex).optimum);

  const auto hw = half_weight_counterexample();
  CHECK(hw.is_doubly_stochastic());
  CHECK(lp_feasible(ex, hw, Rational(0), Rational(5)));
  CHECK(s.eta() <= Rational(5));
}

TEST_CASE("shift") {
  Grid g(3, std::vector<Rational>(3));
  g[0][0] = g[2][0] = g[0][2] = g[2][2] = half;
  g[1][1] = Rational(1);
  const DSMatrix equal(g, Values(3, Rational(3)));
  CHECK(shift(equal, 0, 0, 1, 2, Rational(0)) == equal.column(0));
  const auto a = shift(equal, 0, 0, 1, 2, Rational(1, 5));
  CHECK(a == Values{Rational(3, 10), Rational(1, 5), Rational(1, 2)});

  const DSMatrix mixed(g, Values{Rational(9), Rational(6), Rational(4)});
  for (int k = 0; k <= 5; ++k) {
    const auto b = shift(mixed, 0, 0, 1, 2, Rational(k, 10));
    CHECK(b[0] * Rational(9) + b[1] * Rational(6) + b[2] * Rational(4) == mixed.col_values()[0]);
    CHECK(b[1] == Rational(k, 10));
  }
}

TEST_CASE("transform and consecutiveness on the half-weight counterexample") {
  const auto hw = half_weight_counterexample();
  CHECK_FALSE(check_consecutiveness(hw));
  CHECK_FALSE(naive_consecutive(hw));

  TransformStep step;
  const auto t1 = transform(hw, 0, 0, 1, 3, &step);
  CHECK(step.delta > Rational(0));
  CHECK(t1.at(1, 0) > hw.at(1, 0));
  CHECK(t1.is_doubly_stochastic());
  CHECK(t1.col_values() == hw.col_values());
  CHECK_THROWS_AS((void)transform(hw, 0, 1, 0, 3), InvalidTransform);

  const auto r = enforce_consecutiveness(hw, true);
  CHECK(check_consecutiveness(r.matrix));
  CHECK(naive_consecutive(r.matrix));
  CHECK(r.matrix.col_values() == hw.col_values());
  CHECK(r.transforms == r.trace.size());
  CHECK(r.transforms >= 1);
  CHECK(r.transforms <= 256);

  // permutation matrices are left alone
  const auto p = DSMatrix::from_permutation(std::vector<std::size_t>{2, 0, 3, 1}, hw.x());
  const auto rp = enforce_consecutiveness(p);
  CHECK(rp.matrix == p);
  CHECK(rp.transforms == 0);
}

TEST_CASE("block scan and rounding") {
  const Values x{Rational(5), Rational(3)};
  const DSMatrix h({{half, half}, {half, half}}, x);
  const auto snaps = block_scan(h);
  REQUIRE(snaps.size() == 2);
  CHECK(snaps[0].blocks.size() == 1);
  CHECK(snaps[0].blocks[0].rows == std::vector<std::size_t>{0, 1});
  CHECK(snaps[0].blocks[0].value == Rational(1));
  CHECK_FALSE(snaps[0].blocks[0].finished);
  CHECK(snaps[1].blocks[0].finished);
  CHECK(snaps[1].blocks[0].value == Rational(2));

  const auto r = round(h);
  CHECK(r.pi == Permutation{0, 1});
  CHECK(r.prefix_error[0] == Rational(1));
  CHECK(r.prefix_error[1] == Rational(0));

  const auto id = DSMatrix::from_permutation(identity_permutation(3), Values{Rational(3), Rational(2), Rational(1)});
  const auto s = block_scan(id);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& b = s[j].blocks[s[j].block_of[j]];
    CHECK(b.finished);
    CHECK(b.rows == std::vector<std::size_t>{j});
  }
  const auto ri = round(id);
  CHECK(ri.matrix == id);
  CHECK(ri.pi == identity_permutation(3));
}

TEST_CASE("pipeline examples") {
  const auto ex = instances::gen_consecutiveness_example();
  const auto r = gasoline_2approx(ex, true);
  const auto opt = oracles::exact_gasoline(ex).optimum;
  CHECK(r.profile.eta <= r.certificate.eta_lp + Rational(9));
  CHECK(r.profile.eta <= Rational(2) * opt);
  CHECK(r.certificate.bound == r.certificate.eta_lp + Rational(9));
  CHECK(r.profile == evaluate_gasoline(ex, r.pi));
  const auto csv = trace_csv(r.trace);
  CHECK(csv.rfind("j,j_prime,i1,i2,i3,delta\n", 0) == 0);

  // all x equal: rounding loses nothing
  const auto gap = instances::gen_gasoline_gap(6);
  const auto rg = gasoline_2approx(gap);
  CHECK(rg.profile.eta == rg.certificate.eta_lp);

  const auto lpg = instances::gen_lp_gap(3, Rational(7));
  CHECK(lpg.x() == Values(3, Rational(3)));
  CHECK(lpg.y() == Values{Rational(7), Rational(1), Rational(1)});
  const auto rl = gasoline_2approx(lpg);
  CHECK(rl.profile.eta <= rl.certificate.eta_lp + Rational(3));
  CHECK(rl.certificate.eta_lp <= oracles::exact_gasoline(lpg).optimum);
}

TEST_CASE("pipeline properties on random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto inst = instances::random_gasoline(n, seed);
    const auto lp = solve_lp(inst);
    const auto cons = enforce_consecutiveness(lp.matrix);
    CHECK(cons.matrix.col_values() == lp.matrix.col_values());
    CHECK(naive_consecutive(cons.matrix));
    CHECK(cons.transforms <= n * n * n * n);
    const auto rd = round(cons.matrix);
    for (const auto& e : rd.prefix_error) {
      CHECK(e >= Rational(0));
      CHECK(e <= inst.mu_x());
    }
    const auto res = gasoline_2approx(inst);
    Values xs;
    for (auto i : res.pi) xs.push_back(inst.x()[i]);
    CHECK(res.profile.eta == support::circular_interval_eta(xs, inst.y()));
    const auto opt = oracles::exact_gasoline(inst).optimum;
    CHECK(res.certificate.eta_lp <= opt);
    CHECK(res.profile.eta <= res.certificate.bound);
    CHECK(res.profile.eta <= Rational(2) * opt);
  }
}
