#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ietlab/connections.hpp"
#include "support/instances.hpp"

using namespace ietlab;

namespace {

struct Marked {
  std::shared_ptr<const Field> f = Field::make({{"a", SurdSpec{0, 1, 10, 2}}});
  FieldElement a = f->gen("a");
  Iet rot = Iet::rotation(f, a);
};

}  // namespace

TEST_CASE("plain rotation has no connection") {
  Marked g;
  const CodedSystem sys(g.rot);
  const ConnectionScan scan = find_primitive_connections(sys, 64);
  CHECK(scan.connections.empty());
  CHECK(scan.M == 0);
  CHECK(scan.exhausted);
  CHECK(scan.complete());
  CHECK(R_value(sys, scan) == 1);
}

TEST_CASE("marked point 2a: one connection of length 1") {
  Marked g;
  const CodedSystem sys = CodedSystem::refine(g.rot, {g.a * Rational(2)});
  const ConnectionScan scan = find_primitive_connections(sys, 64);
  REQUIRE(scan.connections.size() == 1);
  CHECK(scan.connections[0].source == g.a);
  CHECK(scan.connections[0].target == g.a * Rational(2));
  CHECK(scan.connections[0].length == 1);
  CHECK(scan.M == 1);
  CHECK(scan.complete());
  CHECK(R_value(sys, scan) == 1);
}

TEST_CASE("longer connection and the scan bound") {
  Marked g;
  // T^4(a) = 5a
  const CodedSystem sys = CodedSystem::refine(g.rot, {g.a * Rational(5)});
  const ConnectionScan scan = find_primitive_connections(sys, 64);
  CHECK(scan.M == 4);
  CHECK(scan.complete());
  const ConnectionScan short_scan = find_primitive_connections(sys, 2);
  CHECK(short_scan.connections.empty());
  // the drift certificate still bounds the hitting time above 2, so the
  // short scan knows it missed something
  CHECK_FALSE(short_scan.complete());
}

TEST_CASE("rational marked point is never hit") {
  Marked g;
  const CodedSystem sys = CodedSystem::refine(g.rot, {FieldElement(Rational(1, 3))});
  const ConnectionScan scan = find_primitive_connections(sys, 32);
  CHECK(scan.connections.empty());
  CHECK(scan.complete());
  CHECK(R_value(sys, scan) == 2);
}

TEST_CASE("distinct primitive count merges shared targets") {
  Marked g;
  std::vector<Connection> cs{{g.a, g.a * Rational(2), 1, true}, {g.a * Rational(3), g.a * Rational(2), 2, true}};
  CHECK(distinct_primitive_count(cs) == 1);
}

TEST_CASE("orbit disjointness") {
  Marked g;
  // T^{-3}(2a) = 1 - a
  const auto rep = orbits_disjoint(g.rot, {FieldElement(1) - g.a, g.a * Rational(2)}, 16);
  CHECK_FALSE(rep.disjoint);
  REQUIRE(rep.witnesses.size() >= 1);
  CHECK(rep.witnesses[0].from == 1);
  CHECK(rep.witnesses[0].to == 0);
  CHECK(rep.witnesses[0].steps == 3);

  const auto ok = orbits_disjoint(g.rot, {FieldElement(1) - g.a, FieldElement(Rational(1, 3))}, 16);
  CHECK(ok.disjoint);
  CHECK(ok.certified);
  CHECK_FALSE(orbits_disjoint(g.rot, {FieldElement(Rational(1, 3)), FieldElement(Rational(1, 3))}, 16).disjoint);
}

TEST_CASE("connections satisfy T^n(source) = target with no earlier cut") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const CodedSystem sys(testing::random_iet(rng, static_cast<int>(testing::uniform(rng, 2, 5))));
    const ConnectionScan scan = find_primitive_connections(sys, 256);
    const auto cuts = sys.cut_points();
    for (const auto& c : scan.connections) {
      FieldElement x = c.source;
      for (int k = 1; k <= c.length; ++k) {
        x = sys.iet().apply(x);
        if (k < c.length) CHECK(std::find(cuts.begin(), cuts.end(), x) == cuts.end());
      }
      CHECK(x == c.target);
    }
    CHECK(R_value(sys, scan) >= 0);
  }
}
