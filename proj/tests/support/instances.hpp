#pragma once

// Seeded random instances for the property suites.

#include <algorithm>
#include <random>
#include <set>

#include "ietlab/criteria.hpp"

namespace ietlab::testing {

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// alpha = (p + sqrt(d)) / r in (0, 1), d squarefree.
inline SurdSpec random_alpha(std::mt19937_64& rng) {
  static const long ds[] = {2, 3, 5, 6, 7, 10, 11, 13};
  const long d = ds[uniform(rng, 0, 7)];
  const long r = uniform(rng, 3, 30);
  const long root = static_cast<long>(std::floor(std::sqrt(static_cast<double>(d))));
  const long p = uniform(rng, -root, r - root - 1);
  return {p, 1, r, d};
}

struct RotationInstance {
  std::shared_ptr<const Field> field;
  FieldElement alpha;
  Iet rotation;
  SkewSpec spec;
};

/// A rotation with q in {1, 2} marked points, mixing rationals and points of
/// Z(alpha), and a random cocycle mod N in [2, max_n].
inline RotationInstance random_rotation_instance(std::mt19937_64& rng, long max_n = 5) {
  auto field = Field::make({{"alpha", random_alpha(rng)}});
  const FieldElement alpha = field->gen("alpha");
  Iet rot = Iet::rotation(field, alpha);
  const int q = static_cast<int>(uniform(rng, 1, 2));
  std::vector<FieldElement> marked;
  for (int tries = 0; static_cast<int>(marked.size()) < q && tries < 200; ++tries) {
    FieldElement z;
    if (uniform(rng, 0, 1) == 0) {
      const long den = uniform(rng, 3, 12);
      z = FieldElement(Rational(uniform(rng, 1, den - 1), den));
    } else {
      z = alpha * Rational(uniform(rng, -4, 4)) + FieldElement(uniform(rng, -3, 3));
    }
    if (field->sign(z) <= 0 || !field->less(z, FieldElement(1))) continue;
    if (std::any_of(marked.begin(), marked.end(), [&](const FieldElement& m) { return m == z; })) continue;
    marked.push_back(z);
  }
  std::sort(marked.begin(), marked.end(), [&](const auto& a, const auto& b) { return field->less(a, b); });
  SkewSpec spec;
  spec.modulus = uniform(rng, 2, max_n);
  spec.marked = marked;
  for (std::size_t k = 0; k <= marked.size(); ++k) spec.values.push_back(uniform(rng, 0, spec.modulus - 1));
  return {field, alpha, std::move(rot), std::move(spec)};
}

/// An irreducible permutation of {1..r}.
inline Permutation random_irreducible(std::mt19937_64& rng, int r) {
  std::vector<int> p(r);
  while (true) {
    for (int k = 0; k < r; ++k) p[k] = k + 1;
    std::shuffle(p.begin(), p.end(), rng);
    bool ok = true;
    int mx = 0;
    for (int k = 0; k + 1 < r && ok; ++k) {
      mx = std::max(mx, p[k]);
      ok = mx != k + 1;
    }
    if (ok) return Permutation(p);
  }
}

/// An r-interval exchange on [0, 1) whose cuts are random points of the
/// span of 1, s = sqrt(2)/7, t = sqrt(3)/11.
inline Iet random_iet(std::mt19937_64& rng, int r) {
  auto field = Field::make({{"s", SurdSpec{0, 1, 7, 2}}, {"t", SurdSpec{0, 1, 11, 3}}});
  const FieldElement s = field->gen("s"), t = field->gen("t");
  std::vector<FieldElement> cuts;
  while (static_cast<int>(cuts.size()) < r - 1) {
    const FieldElement z = FieldElement(Rational(uniform(rng, 0, 20), 20)) + s * Rational(uniform(rng, -3, 3)) +
                           t * Rational(uniform(rng, -3, 3));
    if (field->sign(z) <= 0 || !field->less(z, FieldElement(1))) continue;
    if (std::any_of(cuts.begin(), cuts.end(), [&](const FieldElement& c) { return c == z; })) continue;
    cuts.push_back(z);
  }
  std::sort(cuts.begin(), cuts.end(), [&](const auto& a, const auto& b) { return field->less(a, b); });
  std::vector<FieldElement> lengths;
  FieldElement prev = 0;
  for (const auto& c : cuts) {
    lengths.push_back(c - prev);
    prev = c;
  }
  lengths.push_back(FieldElement(1) - prev);
  return Iet(field, std::move(lengths), random_irreducible(rng, r));
}

/// A uniformly chosen exact point of [0, total): a random rational, shifted
/// by a small multiple of the first generator when there is one.
inline FieldElement random_point(std::mt19937_64& rng, const Iet& t) {
  const Field& f = t.field();
  while (true) {
    FieldElement x = FieldElement(Rational(uniform(rng, 0, 997), 997));
    if (f.size() > 0) x += FieldElement::generator(0, Rational(uniform(rng, -2, 2), 3));
    x = f.reduce_mod(x, f.floor(t.total()) + 1);
    if (f.sign(x) >= 0 && f.less(x, t.total())) return x;
  }
}

}  // namespace ietlab::testing
