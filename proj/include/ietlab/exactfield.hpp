#pragma once

// Exact arithmetic over the rational-affine span of a few irrational
// generators: elements c0 + sum_j c_j * g_j with rational c's.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ietlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad expressions, unknown generators, invalid IETs.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Sign determination needed more refinement steps than allowed. In practice
/// this means the declared generators are not rationally independent.
class RefinementBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// (p + q*sqrt(d)) / r
struct SurdSpec {
  Integer p, q, r, d;
};

/// [a0; a1, a2, ...] with an eventually periodic tail. `period` must be
/// nonempty: a finite expansion would be rational.
struct ContinuedFractionSpec {
  std::vector<Integer> prefix;
  std::vector<Integer> period;
};

struct GeneratorSpec {
  std::string name;
  std::variant<SurdSpec, ContinuedFractionSpec> source;
};

class FieldElement {
 public:
  using Term = std::pair<int, Rational>;

  FieldElement() = default;
  FieldElement(Rational c);  // NOLINT(google-explicit-constructor)
  FieldElement(long c) : FieldElement(Rational(c)) {}  // NOLINT
  FieldElement(int c) : FieldElement(Rational(c)) {}   // NOLINT

  static FieldElement generator(int index, Rational coefficient = 1);

  const Rational& constant() const { return constant_; }
  /// Nonzero generator coefficients sorted by generator index.
  const std::vector<Term>& terms() const { return terms_; }
  Rational coefficient(int index) const;

  bool is_rational() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && sgn(constant_) == 0; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const Rational& s);
  FieldElement& operator/=(const Rational& s);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const Rational& s) { return a *= s; }
  friend FieldElement operator*(const Rational& s, FieldElement a) { return a *= s; }
  friend FieldElement operator/(FieldElement a, const Rational& s) { return a /= s; }

  /// Multiplies two elements; fails unless one of them is rational.
  friend FieldElement multiply(const FieldElement& a, const FieldElement& b);

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Structural total order (not the numeric one); usable as a map key.
  friend bool structural_less(const FieldElement& a, const FieldElement& b);

 private:
  Rational constant_{0};
  std::vector<Term> terms_;
};

struct FieldOptions {
  int refinement_cap = 10000;
};

/// Owns the generator declarations and their refinable enclosures. Elements
/// are plain values; everything that needs the numeric value of a generator
/// (ordering, floor, decimal rendering) goes through the Field.
class Field {
 public:
  explicit Field(std::vector<GeneratorSpec> generators, FieldOptions options = {});

  static std::shared_ptr<const Field> make(std::vector<GeneratorSpec> generators,
                                           FieldOptions options = {});
  /// A field with no generators: plain rational arithmetic.
  static std::shared_ptr<const Field> rationals();

  const std::vector<GeneratorSpec>& generators() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  const std::string& name(int index) const { return specs_.at(index).name; }
  int index_of(std::string_view name) const;  // throws InputError
  FieldElement gen(std::string_view name) const;
  const FieldOptions& options() const { return options_; }

  std::strong_ordering compare(const FieldElement& x, const FieldElement& y) const;
  int sign(const FieldElement& x) const;
  bool less(const FieldElement& x, const FieldElement& y) const {
    return compare(x, y) == std::strong_ordering::less;
  }

  /// Largest integer k with k <= x.
  Integer floor(const FieldElement& x) const;
  /// x - k*modulus lying in [0, modulus).
  FieldElement reduce_mod(const FieldElement& x, const Integer& modulus) const;

  /// (m, n) with x = m*g + n, if x lies in Z(g) for the named generator.
  std::optional<std::pair<Integer, Integer>> in_Z_alpha(const FieldElement& x,
                                                         std::string_view generator) const;
  /// Same for an arbitrary irrational alpha of the field.
  static std::optional<std::pair<Integer, Integer>> in_Z_alpha(const FieldElement& x,
                                                                const FieldElement& alpha);

  double to_double(const FieldElement& x) const;
  double generator_value(int index) const { return approx_.at(index); }

  FieldElement parse(std::string_view text) const;
  std::string format(const FieldElement& x) const;

  /// Floating residual test: searches small integer relations
  /// c0 + c1*g_i + c2*g_j = 0. Returns a description of the first suspicious
  /// relation, or nullopt when none was found.
  std::optional<std::string> independence_warning() const;

 private:
  struct Enclosure {
    Rational lo, hi;
  };
  struct CfState {
    std::vector<Integer> terms;  // consumed so far
    Integer p_prev{1}, q_prev{0}, p{0}, q{1};
  };

  Enclosure enclosure(int index, int level) const;
  Enclosure compute_enclosure(int index, int level) const;
  Integer cf_term(const ContinuedFractionSpec& cf, std::size_t k) const;
  std::optional<int> filtered_sign(const FieldElement& x) const;

  std::vector<GeneratorSpec> specs_;
  FieldOptions options_;
  std::vector<double> approx_;
  mutable std::mutex mutex_;
  mutable std::vector<std::vector<Enclosure>> cache_;
};

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace ietlab
