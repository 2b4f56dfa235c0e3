#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ietlab/exactfield.hpp"

using namespace ietlab;

namespace {

std::shared_ptr<const Field> sqrt2_over_10() { return Field::make({{"a", SurdSpec{0, 1, 10, 2}}}); }

// 1e-25 resolution oracles (mpmath, 60 digits).
const char* kGolden25 = "6180339887498948482045868";
const char* kCf25 = "9807621135331594029116951";

}  // namespace

TEST_CASE("surd generators compare exactly against close rationals") {
  auto f = sqrt2_over_10();
  const FieldElement a = f->gen("a");
  // a - 14142135623731/10^14 is about -4.95e-16: below double resolution of a.
  const FieldElement x = a - FieldElement(Rational(Integer("14142135623731"), Integer("100000000000000")));
  CHECK(f->sign(x) == -1);
  CHECK(f->sign(a - FieldElement(Rational(Integer("14142135623730"), Integer("100000000000000")))) == 1);
  CHECK(f->floor(a * Rational(Integer("1000000000000000000000000000000"))) ==
        Integer("141421356237309504880168872420"));
  CHECK(f->floor(a * Rational(-7)) == -1);
}

TEST_CASE("continued fraction generators") {
  // golden = [0; 1, 1, 1, ...], b = [0; (1, 50)] = 15 sqrt(3) - 25
  auto f = Field::make({{"g", ContinuedFractionSpec{{0}, {1}}}, {"b", ContinuedFractionSpec{{0}, {1, 50}}}});
  const Rational scale(Integer("10000000000000000000000000"));
  CHECK(f->floor(f->gen("g") * scale) == Integer(kGolden25));
  CHECK(f->floor(f->gen("b") * scale) == Integer(kCf25));
  CHECK(f->less(f->gen("g"), f->gen("b")));
}

TEST_CASE("equal generators of different sources exhaust the refinement budget") {
  auto f = Field::make({{"g", ContinuedFractionSpec{{0}, {1}}}, {"h", SurdSpec{-1, 1, 2, 5}}},
                       FieldOptions{200});
  CHECK_THROWS_AS(f->sign(f->gen("g") - f->gen("h")), RefinementBudgetExceeded);
  CHECK(f->independence_warning().has_value());
}

TEST_CASE("field element arithmetic") {
  auto f = sqrt2_over_10();
  const FieldElement a = f->gen("a");
  FieldElement x = FieldElement(1) - a * Rational(3);
  CHECK(x.coefficient(0) == -3);
  CHECK(x.constant() == 1);
  CHECK((x + a * Rational(3)).is_rational());
  CHECK((x - x).is_zero());
  CHECK((x / Rational(2)).coefficient(0) == Rational(-3, 2));
  CHECK(multiply(a, FieldElement(Rational(2))) == a * Rational(2));
  CHECK_THROWS_AS(multiply(a, a), InputError);
}

TEST_CASE("reduce_mod and floor") {
  auto f = sqrt2_over_10();
  const FieldElement a = f->gen("a");
  const FieldElement r = f->reduce_mod(a * Rational(17), 1);
  // 17 sqrt(2)/10 mod 1 = 0.40416305603426...
  CHECK(r == a * Rational(17) - FieldElement(2));
  CHECK(f->to_double(r) == doctest::Approx(0.404163056034261583));
  CHECK(f->floor(FieldElement(Rational(-1, 2))) == -1);
}

TEST_CASE("Z(alpha) membership") {
  auto f = sqrt2_over_10();
  const FieldElement a = f->gen("a");
  auto z = f->in_Z_alpha(a * Rational(3) - FieldElement(1), "a");
  REQUIRE(z);
  CHECK(z->first == 3);
  CHECK(z->second == -1);
  CHECK_FALSE(f->in_Z_alpha(a / Rational(2), "a"));
  CHECK_FALSE(f->in_Z_alpha(FieldElement(Rational(1, 3)), "a"));
  auto w = Field::in_Z_alpha(FieldElement(1) - a * Rational(2), FieldElement(1) - a);
  REQUIRE(w);
  CHECK(w->first == 2);
  CHECK(w->second == -1);
}

TEST_CASE("parse and format") {
  auto f = sqrt2_over_10();
  const FieldElement a = f->gen("a");
  CHECK(f->parse("1 - a") == FieldElement(1) - a);
  CHECK(f->parse("2*a - (1/2 + a)") == a - FieldElement(Rational(1, 2)));
  CHECK(f->parse("-0.25 + 3*a/4") == a * Rational(3, 4) - FieldElement(Rational(1, 4)));
  CHECK(f->format(FieldElement(1) - a) == "1 - a");
  CHECK(f->format(a * Rational(3) - FieldElement(1)) == "-1 + 3*a");
  for (const char* s : {"1 - a", "-1 + 3*a", "1/10*a", "7/3", "0"}) CHECK(f->format(f->parse(s)) == s);
  CHECK_THROWS_AS(f->parse("2*b"), InputError);
  CHECK_THROWS_AS(f->parse("a*a"), InputError);
  CHECK_THROWS_AS(f->parse("(1"), InputError);
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(Field::make({{"a", SurdSpec{0, 1, 10, 4}}}), InputError);  // perfect square
  CHECK_THROWS_AS(Field::make({{"a", SurdSpec{0, 1, 0, 2}}}), InputError);
  CHECK_THROWS_AS(Field::make({{"a", SurdSpec{0, 1, 10, 2}}, {"a", SurdSpec{0, 1, 10, 3}}}), InputError);
  CHECK_FALSE(sqrt2_over_10()->independence_warning().has_value());
  auto dup = Field::make({{"a", SurdSpec{0, 1, 10, 2}}, {"b", SurdSpec{0, 1, 5, 2}}});
  CHECK(dup->independence_warning().has_value());
}
