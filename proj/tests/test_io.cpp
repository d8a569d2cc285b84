#include <doctest.h>

#include "stockseq/errors.hpp"
#include "stockseq/instances.hpp"
#include "stockseq/io.hpp"

using namespace stockseq;
using namespace stockseq::io;

TEST_CASE("parse instances") {
  const auto a = parse_instance(R"({"kind":"alternating","x":[5,"3",2],"y":["4",4,"2"]})");
  REQUIRE(kind_of(a) == InstanceKind::Alternating);
  CHECK(std::get<AlternatingInstance>(a).mu() == Rational(5));

  const auto g = parse_instance(R"({"kind":"gasoline","x":["1/2","3/2"],"y":[2,0]})");
  CHECK(std::get<GasolineInstance>(g).balanced());

  const auto s = parse_instance(R"({"kind":"slated","x":[2],"y":[1,1],"slots":"XYY"})");
  CHECK(std::get<SlatedInstance>(s).slot_count() == 3);

  for (const char* bad : {
           "", "[]", R"({"x":[1],"y":[1]})", R"({"kind":"other","x":[1],"y":[1]})",
           R"({"kind":"alternating","x":[1.5],"y":[1.5]})", R"({"kind":"alternating","x":[1],"y":[2]})",
           R"({"kind":"alternating","x":["1/0"],"y":[1]})", R"({"kind":"slated","x":[1],"y":[1]})",
           R"({"kind":"gasoline","x":[1],"y":"1"})"}) {
    CHECK_THROWS_AS((void)parse_instance(bad), InvalidInstance);
  }
}

TEST_CASE("canonical round trip") {
  const std::vector<AnyInstance> all{
      instances::gen_gap_alternating(3), instances::gen_lp_gap(3, Rational(7, 2)),
      instances::random_gasoline(6, 4), instances::random_slated(7, 2),
      parse_instance(R"({"kind":"alternating","x":[1,3,2],"y":[2,2,2]})")};
  for (const auto& inst : all) {
    const auto text = write_instance(inst);
    CHECK(text.back() == '\n');
    CHECK(write_instance(parse_instance(text)) == text);
  }
  // user order survives
  const auto txt = write_instance(parse_instance(R"({"kind":"alternating","x":[1,3,2],"y":[2,2,2]})"));
  CHECK(txt == "{\"kind\":\"alternating\",\"x\":[\"1\",\"3\",\"2\"],\"y\":[\"2\",\"2\",\"2\"]}\n");
}

TEST_CASE("result documents use user indices") {
  const AnyInstance inst = parse_instance(R"({"kind":"alternating","x":[1,3],"y":[3,1]})");
  const auto& a = std::get<AlternatingInstance>(inst);
  // sorted x = (3,1), sorted y = (3,1): place 3 then 1 on both sides
  const Arrangement sorted{{0, 1}, {0, 1}};
  const auto prof = evaluate_alternating(a, sorted);
  const auto doc = result_json(inst, "pairing", sorted, prof);
  CHECK(doc["arrangement"]["sigma"] == Json::array({1, 0}));
  CHECK(doc["arrangement"]["nu"] == Json::array({0, 1}));
  CHECK(doc["beta"] == "3");
  CHECK(doc["alpha"] == "0");
  CHECK(doc["feasible"] == true);
  CHECK(doc["prefix_values"] == Json::array({"3", "0", "1", "0"}));
  CHECK(rational_from_json(Json("-7/14")) == Rational(-1, 2));
  CHECK(rational_from_json(Json(4)) == Rational(4));
}
