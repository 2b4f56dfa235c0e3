#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ietlab/extension.hpp"
#include "support/instances.hpp"

using namespace ietlab;

namespace {

struct Example16 {
  std::shared_ptr<const Field> f = Field::make({{"alpha", SurdSpec{0, 1, 20, 2}}});
  FieldElement alpha = f->gen("alpha");
  Iet rot = Iet::rotation(f, alpha);
  SkewSpec spec{{FieldElement(Rational(1, 8)), FieldElement(Rational(1, 3))}, {1, 0, 3}, 4};
};

struct Marked {
  std::shared_ptr<const Field> f = Field::make({{"a", SurdSpec{0, 1, 10, 2}}});
  FieldElement a = f->gen("a");
  Iet rot = Iet::rotation(f, a);
  SkewSpec spec(std::int64_t N, std::vector<std::int64_t> v) const { return {{a * Rational(2)}, std::move(v), N}; }
};

}  // namespace

TEST_CASE("sixteen-interval example: permutation and xi") {
  Example16 ex;
  const SkewProduct sp(ex.rot, ex.spec);
  const Iet& t = sp.iet();
  REQUIRE(t.size() == 16);
  CHECK(t.permutation().images() == std::vector<int>{16, 5, 2, 15, 4, 9, 6, 3, 8, 13, 10, 7, 12, 1, 14, 11});
  const XiPermutation x = xi(t);
  CHECK(x.images == std::vector<int>{15, 13, 14, 7, 8, 1, 2, 11, 12, 5, 6, 16, 0, 9, 10, 3, 4});
  CHECK(x.orbit(0).size() == 9);
  CHECK(t.total() == FieldElement(4));
  CHECK(sp.symbol_values() == std::vector<std::int64_t>{1, 0, 3, 3});
}

TEST_CASE("skew map is (Tx, s + f(x))") {
  Example16 ex;
  for (auto layout : {SheetLayout::Reflected, SheetLayout::Direct}) {
    const SkewProduct sp(ex.rot, ex.spec, {false, layout});
    for (int s = 0; s < 4; ++s) {
      for (const FieldElement& x : {FieldElement(0), FieldElement(Rational(1, 5)), FieldElement(Rational(1, 2)),
                                    FieldElement(1) - ex.alpha / Rational(2)}) {
        const long fx = ex.f->less(x, FieldElement(Rational(1, 8)))   ? 1
                        : ex.f->less(x, FieldElement(Rational(1, 3))) ? 0
                                                                       : 3;
        const FieldElement lifted = x + FieldElement(sp.position_of_sheet(s));
        const FieldElement image = sp.iet().apply(lifted);
        const FieldElement expected = ex.rot.apply(x) + FieldElement(sp.position_of_sheet((s + fx) % 4));
        CHECK(image == expected);
      }
    }
  }
}

TEST_CASE("lifted symbol naming and sheets") {
  Example16 ex;
  const SkewProduct sp(ex.rot, ex.spec);
  const Alphabet& al = sp.lifted_coding().alphabet();
  CHECK(al.size() == 16);
  const Symbol c2 = sp.symbol_of({2, 2});
  CHECK(al.name(c2) == "C2");
  CHECK(sp.lifted_symbol(c2) == LiftedSymbol{2, 2});
  CHECK(sp.position_of_sheet(0) == 0);
  CHECK(sp.position_of_sheet(1) == 3);
  const SkewProduct direct(ex.rot, ex.spec, {false, SheetLayout::Direct});
  CHECK(direct.position_of_sheet(1) == 1);
}

TEST_CASE("merging keeps the map") {
  Marked g;
  const SkewProduct plain(g.rot, g.spec(2, {1, 0}));
  const SkewProduct merged(g.rot, g.spec(2, {1, 0}), {true, SheetLayout::Reflected});
  CHECK(merged.iet().size() <= plain.iet().size());
  CHECK(merged.premerge_count() == plain.iet().size());
  for (int k = 0; k < 20; ++k) {
    const FieldElement x = FieldElement(Rational(k, 10)) + g.a / Rational(3);
    CHECK(merged.iet().apply(x) == plain.iet().apply(x));
  }
  // N = 1: the skew product is the refined base
  const SkewProduct one(g.rot, g.spec(1, {1, 0}));
  CHECK(one.iet().size() == 3);
}

TEST_CASE("edge rule, project and lift") {
  Marked g;
  for (auto v : {std::vector<std::int64_t>{1, 0}, std::vector<std::int64_t>{0, 1}}) {
    const SkewProduct sp(g.rot, g.spec(2, v));
    CHECK(lift_edge_rule(sp));
    const CodedSystem& base = sp.base_coding();
    for (int n = 1; n <= 5; ++n) {
      for (const Word& w : base.words_of_length(n)) {
        for (int s = 0; s < 2; ++s) {
          const Word up = lift(sp, w, s);
          CHECK(project(sp, up) == w);
          CHECK(sp.lifted_coding().word_in_language(up));
          CHECK(sp.lifted_symbol(up[0]).sheet == s);
        }
      }
    }
    CHECK_THROWS_AS(lift(sp, base.alphabet().parse("CB"), 0), InputError);
  }
}

TEST_CASE("spec validation") {
  Marked g;
  CHECK_THROWS_AS(SkewProduct(g.rot, {{g.a * Rational(2)}, {1}, 2}), InputError);
  CHECK_THROWS_AS(SkewProduct(g.rot, {{g.a * Rational(2)}, {1, 0}, 0}), InputError);
  CHECK_THROWS_AS(SkewProduct(g.rot, {{FieldElement(2)}, {1, 0}, 2}), InputError);
  CHECK_THROWS_AS(SkewProduct(g.rot, {{g.a * Rational(2), g.a}, {1, 0, 0}, 2}), InputError);
  // negative values reduce mod N
  CHECK(SkewProduct(g.rot, {{g.a * Rational(2)}, {-1, 0}, 3}).symbol_values()[0] == 2);
}

TEST_CASE("random lifts are bijective and respect the edge rule") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_rotation_instance(rng, 4);
    const SkewProduct sp(inst.rotation, inst.spec);
    CHECK(lift_edge_rule(sp));
    const Iet& t = sp.iet();
    const Iet ti = inverse(t);
    for (int k = 0; k < 8; ++k) {
      const FieldElement x = testing::random_point(rng, t);
      CHECK(ti.apply(t.apply(x)) == x);
    }
  }
}

TEST_CASE("lift accumulates sheets by partial sums") {
  Marked g;
  const SkewProduct sp(g.rot, g.spec(2, {1, 0}));
  const Alphabet& base = sp.base_coding().alphabet();
  const Alphabet& up = sp.lifted_coding().alphabet();
  CHECK(up.spell(lift(sp, base.parse("CAABB"), 0)) == "C0A0A1B0B0");
  CHECK(base.spell(project(sp, up.parse("A1A0"))) == "AA");
  CHECK(lift(sp, Word{}, 1).empty());
}

TEST_CASE("Veech 1969 extension: six raw intervals, five merged") {
  Marked g;
  const SkewSpec spec{{FieldElement(Rational(1, 3))}, {1, 0}, 2};
  CHECK(SkewProduct(g.rot, spec).iet().size() == 6);
  CHECK(SkewProduct(g.rot, spec, {true, SheetLayout::Reflected}).iet().size() == 5);
}
