#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "ietlab/session.hpp"

using namespace ietlab;

namespace {

std::string config_path(const std::string& name) { return std::string(IETLAB_SOURCE_DIR) + "/configs/" + name; }

Json fig(std::int64_t N, std::vector<std::int64_t> values) {
  Json doc = Json::parse(R"({
    "generators": [{"name": "a", "surd": {"p": 0, "q": 1, "r": 10, "d": 2}}],
    "iet": {"lengths": ["1 - a", "a"], "permutation": [2, 1]}
  })");
  doc["skew"] = {{"marked", {"2*a"}}, {"values", values}, {"modulus", N}};
  return doc;
}

}  // namespace

TEST_CASE("config round trip is canonical") {
  const SessionConfig c = parse_config(fig(2, {1, 0}), Bounds{});
  const Json once = to_json(c);
  CHECK(to_json(parse_config(once, Bounds{})) == once);
  CHECK(once["bounds"]["n_max"] == 4096);
  CHECK(once["flags"]["merge"] == false);
  CHECK(once["skew"]["values"] == Json({1, 0}));
}

TEST_CASE("continued fraction syntax") {
  Json doc = Json::parse(R"({
    "generators": [{"name": "g", "cf": [0, 1, "..."]}, {"name": "b", "cf": [0, [1, 50]]}],
    "iet": {"lengths": ["1 - g", "g"], "permutation": [2, 1]}
  })");
  const SessionConfig c = parse_config(doc, Bounds{});
  const auto& g = std::get<ContinuedFractionSpec>(c.generators[0].source);
  CHECK(g.prefix == std::vector<Integer>{0});
  CHECK(g.period == std::vector<Integer>{1});
  const auto& b = std::get<ContinuedFractionSpec>(c.generators[1].source);
  CHECK(b.period == std::vector<Integer>{1, 50});
  const Session s = build_session(c);
  CHECK(s.field->to_double(s.field->gen("g")) == doctest::Approx(0.6180339887));
  CHECK(to_json(parse_config(to_json(c), Bounds{})) == to_json(c));
}

TEST_CASE("malformed configs are input errors") {
  Json unknown = fig(2, {1, 0});
  unknown["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(unknown, Bounds{}), InputError);
  Json nested = fig(2, {1, 0});
  nested["skew"]["modulo"] = 3;
  CHECK_THROWS_AS(parse_config(nested, Bounds{}), InputError);
  Json both = fig(2, {1, 0});
  both["generators"][0]["cf"] = Json::array({0, 1});
  CHECK_THROWS_AS(parse_config(both, Bounds{}), InputError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"generators": []})"), Bounds{}), InputError);
  CHECK_THROWS_AS(build_session(load_config(config_path("bad_generator.json"), Bounds{})), InputError);
  CHECK_THROWS_AS(load_config(config_path("does_not_exist.json"), Bounds{}), InputError);
  Json wrong_values = fig(2, {1});
  CHECK_THROWS_AS(build_session(parse_config(wrong_values, Bounds{})), InputError);
}

TEST_CASE("bounds from the environment") {
  ::setenv("IETLAB_BOUNDS", "n_max=99,return_budget=5000", 1);
  const Bounds b = default_bounds();
  CHECK(b.n_max == 99);
  CHECK(b.p_max == 64);
  CHECK(b.return_budget == 5000);
  // explicit config bounds win
  Json doc = fig(2, {1, 0});
  doc["bounds"] = {{"n_max", 7}};
  const SessionConfig c = parse_config(doc);
  CHECK(c.bounds.n_max == 7);
  CHECK(c.bounds.return_budget == 5000);
  ::setenv("IETLAB_BOUNDS", "n_max", 1);
  CHECK_THROWS_AS(default_bounds(), InputError);
  ::unsetenv("IETLAB_BOUNDS");
  CHECK(default_bounds().n_max == 4096);
}

TEST_CASE("analysis documents and exit codes") {
  const Analysis a7 = analyze(build_session(parse_config(fig(2, {1, 0}), Bounds{})));
  CHECK(a7.exit_code == kDecided);
  CHECK(a7.document["schema"] == kSchema);
  CHECK(a7.document["extension"]["gcd"]["status"] == "not_minimal");
  // default vertex: the least one, AA
  CHECK(a7.document["extension"]["gcd"]["vertex"] == "AA");
  CHECK(a7.document["extension"]["gcd"]["d"] == Json({2, 2}));
  CHECK(a7.document["extension"]["gcd"]["return_labels"].size() == 2);
  CHECK(a7.document["cross_check"] == "agree");

  const Analysis a8 = analyze(build_session(parse_config(fig(2, {0, 1}), Bounds{})));
  CHECK(a8.exit_code == kDecided);
  CHECK(a8.document["extension"]["gcd"]["status"] == "minimal");

  Bounds tiny;
  tiny.n_max = 0;
  const Analysis u = analyze(build_session(parse_config(fig(2, {1, 0}), tiny)));
  CHECK(u.exit_code == kUndecided);

  // output is deterministic
  CHECK(analyze(build_session(parse_config(fig(2, {1, 0}), Bounds{}))).document.dump() == a7.document.dump());
}

TEST_CASE("shipped configs load and decide") {
  for (const char* name : {"marked_rotation.json", "skew_split.json", "skew_connected.json", "example16.json", "golden_rotation.json",
                           "three_interval.json", "cf_large_quotients.json"}) {
    CAPTURE(name);
    const Analysis a = analyze(build_session(load_config(config_path(name), Bounds{})));
    CHECK(a.exit_code == kDecided);
  }
  const Session ex = build_session(load_config(config_path("example16.json"), Bounds{}));
  const Json d = describe_extension(ex);
  CHECK(d["intervals"] == 16);
}

TEST_CASE("verdict rendering") {
  auto f = Field::make({{"a", SurdSpec{0, 1, 10, 2}}});
  Verdict v;
  v.status = Status::NotMinimal;
  v.criterion = "extension";
  v.evidence = TupleEvidence{"(i)", {2, 2, 0}, 2};
  const Json j = to_json(*f, v);
  CHECK(j["status"] == "not_minimal");
  CHECK(j["tuple"] == Json({2, 2, 0}));
  CHECK(to_json(Integer("123456789012345678901234567890")).is_string());
  CHECK(to_json(Integer(12)) == 12);
}
