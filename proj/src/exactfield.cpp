#include "ietlab/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ietlab {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Rational c) : constant_(std::move(c)) { constant_.canonicalize(); }

FieldElement FieldElement::generator(int index, Rational coefficient) {
  FieldElement e;
  coefficient.canonicalize();
  if (sgn(coefficient) != 0) e.terms_.emplace_back(index, std::move(coefficient));
  return e;
}

Rational FieldElement::coefficient(int index) const {
  for (const auto& [i, c] : terms_) {
    if (i == index) return c;
  }
  return 0;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.constant_ = -r.constant_;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  constant_ += o.constant_;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (sgn(c) != 0) merged.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& t : terms_) t.second *= s;
  return *this;
}

FieldElement& FieldElement::operator/=(const Rational& s) {
  if (sgn(s) == 0) throw InputError("division by zero");
  return *this *= Rational(1) / s;
}

FieldElement multiply(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational()) return b * a.constant();
  if (b.is_rational()) return a * b.constant();
  throw InputError("product of two irrational elements is outside the linear span");
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.constant_ == b.constant_ && a.terms_ == b.terms_;
}

bool structural_less(const FieldElement& a, const FieldElement& b) {
  if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.terms_[k].first != b.terms_[k].first) return a.terms_[k].first < b.terms_[k].first;
    if (a.terms_[k].second != b.terms_[k].second) return a.terms_[k].second < b.terms_[k].second;
  }
  return a.terms_.size() < b.terms_.size();
}

// ---------------------------------------------------------------------------
// Field

namespace {

bool is_perfect_square(const Integer& d) { return mpz_perfect_square_p(d.get_mpz_t()) != 0; }

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

}  // namespace

Field::Field(std::vector<GeneratorSpec> generators, FieldOptions options)
    : specs_(std::move(generators)), options_(options) {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto& g = specs_[i];
    if (!valid_identifier(g.name)) throw InputError("invalid generator name '" + g.name + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (specs_[j].name == g.name) throw InputError("duplicate generator '" + g.name + "'");
    }
    if (const auto* s = std::get_if<SurdSpec>(&g.source)) {
      if (s->r == 0) throw InputError(g.name + ": surd denominator r is zero");
      if (s->q == 0) throw InputError(g.name + ": surd with q = 0 is rational");
      if (s->d <= 0 || is_perfect_square(s->d))
        throw InputError(g.name + ": surd radicand must be a positive non-square");
    } else {
      const auto& cf = std::get<ContinuedFractionSpec>(g.source);
      if (cf.period.empty())
        throw InputError(g.name + ": continued fraction needs a periodic tail (finite ones are rational)");
      for (std::size_t k = 1; k < cf.prefix.size(); ++k) {
        if (cf.prefix[k] < 1) throw InputError(g.name + ": partial quotients must be >= 1");
      }
      for (const auto& a : cf.period) {
        if (a < 1) throw InputError(g.name + ": partial quotients must be >= 1");
      }
    }
  }
  cache_.resize(specs_.size());
  approx_.resize(specs_.size());
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    // ~120 bits is plenty for a correctly rounded double.
    const Rational tiny = Rational(1, Integer(1) << 120);
    int level = 0;
    Enclosure e = enclosure(static_cast<int>(i), level);
    while (e.hi - e.lo > tiny && level < options_.refinement_cap) {
      e = enclosure(static_cast<int>(i), ++level);
    }
    approx_[i] = midpoint(e.lo, e.hi).get_d();
  }
}

std::shared_ptr<const Field> Field::make(std::vector<GeneratorSpec> generators, FieldOptions options) {
  return std::make_shared<const Field>(std::move(generators), options);
}

std::shared_ptr<const Field> Field::rationals() {
  static const auto q = std::make_shared<const Field>(std::vector<GeneratorSpec>{});
  return q;
}

int Field::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].name == name) return static_cast<int>(i);
  }
  throw InputError("undeclared generator '" + std::string(name) + "'");
}

FieldElement Field::gen(std::string_view name) const { return FieldElement::generator(index_of(name)); }

Integer Field::cf_term(const ContinuedFractionSpec& cf, std::size_t k) const {
  if (k < cf.prefix.size()) return cf.prefix[k];
  return cf.period[(k - cf.prefix.size()) % cf.period.size()];
}

Field::Enclosure Field::compute_enclosure(int index, int level) const {
  const auto& spec = specs_[index];
  if (const auto* s = std::get_if<SurdSpec>(&spec.source)) {
    const unsigned long bits = 64UL * static_cast<unsigned long>(level + 1);
    Integer scaled = s->d << (2 * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    const Integer denom = Integer(1) << bits;
    const Rational lo_sqrt(root, denom);
    const Rational hi_sqrt(root + 1, denom);
    Rational a = (Rational(s->p) + Rational(s->q) * lo_sqrt) / Rational(s->r);
    Rational b = (Rational(s->p) + Rational(s->q) * hi_sqrt) / Rational(s->r);
    a.canonicalize();
    b.canonicalize();
    if (b < a) std::swap(a, b);
    return {a, b};
  }
  const auto& cf = std::get<ContinuedFractionSpec>(spec.source);
  // Convergents h_k/k_k; the value lies between consecutive ones.
  Integer h_prev = 1, k_prev = 0, h = cf_term(cf, 0), k = 1;
  const std::size_t steps = static_cast<std::size_t>(level) + 1;
  for (std::size_t j = 1; j <= steps; ++j) {
    const Integer a = cf_term(cf, j);
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  Rational c1(h_prev, k_prev), c2(h, k);
  c1.canonicalize();
  c2.canonicalize();
  if (c2 < c1) std::swap(c1, c2);
  return {c1, c2};
}

Field::Enclosure Field::enclosure(int index, int level) const {
  std::lock_guard lock(mutex_);
  auto& levels = cache_[index];
  while (static_cast<int>(levels.size()) <= level) {
    levels.push_back(compute_enclosure(index, static_cast<int>(levels.size())));
  }
  return levels[level];
}

std::optional<int> Field::filtered_sign(const FieldElement& x) const {
  constexpr double kTiny = 1e-280;
  double v = x.constant().get_d();
  double mag = std::fabs(v);
  if (sgn(x.constant()) != 0 && mag < kTiny) return std::nullopt;
  for (const auto& [i, c] : x.terms()) {
    const double cd = c.get_d();
    if (std::fabs(cd) < kTiny) return std::nullopt;
    v += cd * approx_[i];
    mag += std::fabs(cd * approx_[i]);
  }
  if (!std::isfinite(v) || !std::isfinite(mag) || mag < kTiny) return std::nullopt;
  if (std::fabs(v) > 1e-14 * mag) return v > 0 ? 1 : -1;
  return std::nullopt;
}

int Field::sign(const FieldElement& x) const {
  if (x.is_rational()) return sgn(x.constant());
  if (auto s = filtered_sign(x)) return *s;
  for (int level = 0; level < options_.refinement_cap; ++level) {
    Rational lo = x.constant(), hi = x.constant();
    for (const auto& [i, c] : x.terms()) {
      const Enclosure e = enclosure(i, level);
      if (sgn(c) > 0) {
        lo += c * e.lo;
        hi += c * e.hi;
      } else {
        lo += c * e.hi;
        hi += c * e.lo;
      }
    }
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
  }
  std::ostringstream msg;
  msg << "refinement budget (" << options_.refinement_cap
      << " steps) exceeded deciding the sign of " << format(x)
      << "; the declared generators are probably not rationally independent";
  throw RefinementBudgetExceeded(msg.str());
}

std::strong_ordering Field::compare(const FieldElement& x, const FieldElement& y) const {
  if (x == y) return std::strong_ordering::equal;
  const int s = sign(x - y);
  if (s == 0) return std::strong_ordering::equal;  // only reachable for rationals
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Integer Field::floor(const FieldElement& x) const {
  if (x.is_rational()) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.constant().get_num_mpz_t(), x.constant().get_den_mpz_t());
    return f;
  }
  // Cheap path: the double estimate is usually right for moderate magnitudes.
  const double approx = to_double(x);
  if (std::isfinite(approx) && std::fabs(approx) < 1e12) {
    Integer k(std::floor(approx));
    while (sign(x - FieldElement(Rational(k))) < 0) --k;
    while (sign(x - FieldElement(Rational(k + 1))) >= 0) ++k;
    return k;
  }
  // Otherwise narrow an exact enclosure until both ends share a floor.
  for (int level = 0; level < options_.refinement_cap; ++level) {
    Rational lo = x.constant(), hi = x.constant();
    for (const auto& [i, c] : x.terms()) {
      const Enclosure e = enclosure(i, level);
      if (sgn(c) > 0) {
        lo += c * e.lo;
        hi += c * e.hi;
      } else {
        lo += c * e.hi;
        hi += c * e.lo;
      }
    }
    Integer fl, fh;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(fh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (fl == fh && Rational(fh) != hi) return fl;
  }
  throw RefinementBudgetExceeded("refinement budget exceeded computing the floor of " + format(x));
}

FieldElement Field::reduce_mod(const FieldElement& x, const Integer& modulus) const {
  if (modulus < 1) throw InputError("reduce_mod: modulus must be >= 1");
  const Integer k = floor(x / Rational(modulus));
  return x - FieldElement(Rational(k * modulus));
}

std::optional<std::pair<Integer, Integer>> Field::in_Z_alpha(const FieldElement& x,
                                                              const FieldElement& alpha) {
  if (alpha.is_rational()) throw InputError("in_Z_alpha: alpha must be irrational");
  const auto& [idx, a] = alpha.terms().front();
  const Rational m = x.coefficient(idx) / a;
  if (m.get_den() != 1) return std::nullopt;
  const FieldElement rest = x - alpha * m;
  if (!rest.is_rational() || rest.constant().get_den() != 1) return std::nullopt;
  return std::make_pair(Integer(m.get_num()), Integer(rest.constant().get_num()));
}

std::optional<std::pair<Integer, Integer>> Field::in_Z_alpha(const FieldElement& x,
                                                              std::string_view generator) const {
  return in_Z_alpha(x, gen(generator));
}

double Field::to_double(const FieldElement& x) const {
  double v = x.constant().get_d();
  for (const auto& [i, c] : x.terms()) v += c.get_d() * approx_[i];
  return v;
}

std::optional<std::string> Field::independence_warning() const {
  constexpr int kMax = 12;
  const auto near_integer = [](double v) { return std::fabs(v - std::round(v)) < 1e-9; };
  for (std::size_t i = 0; i < approx_.size(); ++i) {
    for (int c1 = 1; c1 <= kMax; ++c1) {
      if (near_integer(c1 * approx_[i]))
        return specs_[i].name + " looks rational (" + std::to_string(c1) + "*" + specs_[i].name +
               " is nearly an integer)";
    }
    for (std::size_t j = i + 1; j < approx_.size(); ++j) {
      for (int c1 = -kMax; c1 <= kMax; ++c1) {
        for (int c2 = 1; c2 <= kMax; ++c2) {
          if (c1 != 0 && near_integer(c1 * approx_[i] + c2 * approx_[j])) {
            return "possible relation " + std::to_string(c1) + "*" + specs_[i].name + " + " +
                   std::to_string(c2) + "*" + specs_[j].name + " in Z";
          }
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

class ExprParser {
 public:
  ExprParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse '" + std::string(text_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  FieldElement term() {
    FieldElement v = unary();
    for (;;) {
      if (accept('*')) {
        v = multiply(v, unary());
      } else if (accept('/')) {
        const FieldElement d = unary();
        if (!d.is_rational()) fail("division by an irrational element");
        if (sgn(d.constant()) == 0) fail("division by zero");
        v /= d.constant();
      } else {
        return v;
      }
    }
  }

  FieldElement unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  FieldElement primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return field_.gen(text_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  FieldElement number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Integer whole(std::string(text_.substr(start, pos_ - start)));
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t fstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string frac(text_.substr(fstart, pos_ - fstart));
      if (frac.empty()) fail("malformed decimal");
      Integer scale = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
      Rational q(whole * scale + Integer(frac), scale);
      q.canonicalize();
      return q;
    }
    return Rational(whole);
  }

  const Field& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement Field::parse(std::string_view text) const { return ExprParser(*this, text).parse(); }

std::string Field::format(const FieldElement& x) const {
  std::string out;
  const auto emit = [&out](bool negative, const std::string& body) {
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  };
  if (sgn(x.constant()) != 0 || x.terms().empty()) {
    emit(sgn(x.constant()) < 0, to_string(Rational(abs(x.constant()))));
  }
  for (const auto& [i, c] : x.terms()) {
    const Rational a = abs(c);
    const std::string& n = i < static_cast<int>(specs_.size()) ? specs_[i].name : "g" + std::to_string(i);
    emit(sgn(c) < 0, a == 1 ? n : to_string(a) + "*" + n);
  }
  return out;
}

}  // namespace ietlab
