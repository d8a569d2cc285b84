#include <doctest.h>

#include <algorithm>

#include "stockseq/errors.hpp"
#include "stockseq/instances.hpp"

using namespace stockseq;
using namespace stockseq::instances;

namespace {
Values rep(std::size_t n, const Rational& v) { return Values(n, v); }

Values concat(Values a, const Values& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
}  // namespace

TEST_CASE("alternating families") {
  const auto gap = gen_gap_alternating(3);
  CHECK(gap.x() == concat(rep(4, 2), rep(6, 1)));
  CHECK(gap.y() == concat(rep(2, 3), rep(8, 1)));
  const auto tight = gen_tight_alternating(3);
  CHECK(tight.x() == rep(4, 2));
  CHECK(tight.y() == Values{Rational(3), Rational(3), Rational(1), Rational(1)});
  for (int p = 3; p <= 9; ++p) {
    CHECK(sum(gen_gap_alternating(p).x()) == sum(gen_gap_alternating(p).y()));
    CHECK(sum(gen_tight_alternating(p).x()) == sum(gen_tight_alternating(p).y()));
    CHECK(gen_tight_alternating(p).mu() == Rational(p));
  }
  CHECK_THROWS_AS((void)gen_gap_alternating(2), InvalidInstance);
  CHECK_THROWS_AS((void)gen_tight_alternating(2), InvalidInstance);
}

TEST_CASE("gasoline families") {
  const auto g = gen_gasoline_gap(4);
  CHECK(g.x() == rep(4, 1));
  CHECK(g.y() == Values{Rational(2), Rational(2), Rational(0), Rational(0)});
  for (std::size_t n = 2; n <= 12; n += 2) {
    const auto h = gen_gasoline_gap(n);
    CHECK(h.balanced());
    CHECK(*std::max_element(h.y().begin(), h.y().end()) == Rational(2));
  }
  CHECK_THROWS_AS((void)gen_gasoline_gap(3), InvalidInstance);

  for (std::size_t n = 1; n <= 6; ++n) CHECK(gen_lp_gap(n, Rational(7, 2)).balanced());
  const auto c = gen_consecutiveness_example();
  CHECK(c.x() == Values{Rational(9), Rational(6), Rational(4), Rational(1)});
  CHECK(c.balanced());
}

TEST_CASE("three-partition reduction") {
  const ThreePartitionInput tp{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, 1};
  const auto r = reduce_3partition(tp);
  CHECK(r.x() == rep(4, 1));
  CHECK(r.y() == Values{Rational(2), Rational(2, 3), Rational(2, 3), Rational(2, 3)});
  CHECK(sum(r.x()) == Rational(4));

  CHECK_THROWS_AS(validate({{Rational(1, 4), Rational(3, 8), Rational(3, 8)}, 1}), InvalidInstance);
  CHECK_THROWS_AS(validate({{Rational(1, 3), Rational(1, 3)}, 1}), InvalidInstance);
  CHECK_THROWS_AS(validate({{Rational(1, 3), Rational(1, 3), Rational(3, 10)}, 1}), InvalidInstance);
}

TEST_CASE("random generators") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 10;
    const auto a = random_alternating(n, seed);
    CHECK(a.x() == random_alternating(n, seed).x());
    CHECK(a.y() == random_alternating(n, seed).y());
    CHECK(a.size() == n);
    for (const auto& v : a.y()) {
      CHECK(v >= Rational(1));
      CHECK(v <= Rational(20));
    }
    const auto g = random_gasoline(n, seed);
    CHECK(g.balanced());
    CHECK(g.y() == random_gasoline(n, seed).y());
    const auto s = random_slated(n + 1, seed);
    CHECK(s.slot_count() == n + 1);
    CHECK(sum(s.x()) == sum(s.y()));
    CHECK(s.x().size() + s.y().size() == n + 1);
    CHECK(format_slots(s.slots()) == format_slots(random_slated(n + 1, seed).slots()));
  }
  CHECK(random_alternating(5, 1).x() != random_alternating(5, 2).x());
  const auto any = gen_random(InstanceKind::Slated, 4, 9);
  CHECK(kind_of(any) == InstanceKind::Slated);
}
