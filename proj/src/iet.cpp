#include "ietlab/iet.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace ietlab {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int r = static_cast<int>(images_.size());
  if (r == 0) throw InputError("permutation must be nonempty");
  inverse_.assign(r, 0);
  for (int k = 0; k < r; ++k) {
    const int v = images_[k];
    if (v < 1 || v > r || inverse_[v - 1] != 0)
      throw InputError("permutation is not a bijection of {1.." + std::to_string(r) + "}");
    inverse_[v - 1] = k + 1;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> v(r);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

std::vector<std::vector<int>> XiPermutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images.size(), false);
  for (int j = 0; j < size(); ++j) {
    if (seen[j]) continue;
    out.push_back(orbit(j));
    for (int k : out.back()) seen[k] = true;
  }
  return out;
}

std::vector<int> XiPermutation::orbit(int j) const {
  std::vector<int> o{j};
  for (int k = images.at(j); k != j; k = images.at(k)) o.push_back(k);
  return o;
}

// ---------------------------------------------------------------------------
// Iet

Iet::Iet(std::shared_ptr<const Field> field, std::vector<FieldElement> lengths, Permutation permutation)
    : field_(std::move(field)), lengths_(std::move(lengths)), permutation_(std::move(permutation)) {
  const int r = size();
  if (r == 0) throw InputError("an IET needs at least one interval");
  if (permutation_.size() != r) throw InputError("permutation size does not match the number of lengths");
  for (int i = 0; i < r; ++i) {
    if (field_->sign(lengths_[i]) <= 0)
      throw InputError("nonpositive length " + field_->format(lengths_[i]) + " for interval " +
                       std::to_string(i + 1));
  }
  left_.reserve(r);
  FieldElement acc;
  for (int i = 0; i < r; ++i) {
    left_.push_back(acc);
    acc += lengths_[i];
  }
  total_ = acc;
  image_left_by_position_.reserve(r);
  std::vector<FieldElement> image_left(r);
  FieldElement pos;
  for (int k = 1; k <= r; ++k) {
    const int i = permutation_(k) - 1;
    image_left_by_position_.push_back(pos);
    image_left[i] = pos;
    pos += lengths_[i];
  }
  translation_.reserve(r);
  for (int i = 0; i < r; ++i) translation_.push_back(image_left[i] - left_[i]);
  premerge_count_ = r;
}

Iet Iet::from_images(std::shared_ptr<const Field> field, std::vector<FieldElement> lengths,
                     const std::vector<FieldElement>& image_lefts) {
  const int r = static_cast<int>(lengths.size());
  if (static_cast<int>(image_lefts.size()) != r) throw InputError("from_images: size mismatch");
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return field->less(image_lefts[a], image_lefts[b]); });
  FieldElement expected;
  for (int k = 0; k < r; ++k) {
    if (!(image_lefts[order[k]] == expected))
      throw InputError("from_images: images do not tile the domain");
    expected += lengths[order[k]];
  }
  std::vector<int> perm(r);
  for (int k = 0; k < r; ++k) perm[k] = order[k] + 1;
  return Iet(std::move(field), std::move(lengths), Permutation(std::move(perm)));
}

Iet Iet::identity(std::shared_ptr<const Field> field, const FieldElement& total) {
  return Iet(std::move(field), {total}, Permutation::identity(1));
}

Iet Iet::rotation(std::shared_ptr<const Field> field, const FieldElement& alpha) {
  return Iet(std::move(field), {FieldElement(1) - alpha, alpha}, Permutation({2, 1}));
}

std::vector<FieldElement> Iet::discontinuities() const { return {left_.begin() + 1, left_.end()}; }

std::vector<FieldElement> Iet::inverse_discontinuities() const {
  return {image_left_by_position_.begin() + 1, image_left_by_position_.end()};
}

bool Iet::contains(const FieldElement& x) const {
  return field_->sign(x) >= 0 && field_->less(x, total_);
}

namespace {

// Largest k with points[k] <= x; points[0] must be <= x.
int locate(const Field& field, const std::vector<FieldElement>& points, const FieldElement& x) {
  int lo = 0, hi = static_cast<int>(points.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (field.compare(points[mid], x) != std::strong_ordering::greater) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

int Iet::interval_of(const FieldElement& x) const {
  if (!contains(x)) throw InputError("point " + field_->format(x) + " is outside [0, " + field_->format(total_) + ")");
  return locate(*field_, left_, x);
}

FieldElement Iet::apply(const FieldElement& x) const { return x + translation_[interval_of(x)]; }

FieldElement Iet::apply_inverse(const FieldElement& x) const {
  if (!contains(x)) throw InputError("point " + field_->format(x) + " is outside [0, " + field_->format(total_) + ")");
  const int k = locate(*field_, image_left_by_position_, x);
  return x - translation_[permutation_(k + 1) - 1];
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

void sort_unique(const Field& field, std::vector<FieldElement>& pts) {
  std::sort(pts.begin(), pts.end(), [&](const FieldElement& a, const FieldElement& b) { return field.less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace

Iet canonical_merge(const Iet& t) {
  std::vector<FieldElement> lengths, images;
  for (int i = 0; i < t.size(); ++i) {
    if (!lengths.empty() && t.translations()[i] == t.translations()[i - 1]) {
      lengths.back() += t.lengths()[i];
    } else {
      lengths.push_back(t.lengths()[i]);
      images.push_back(t.image_left(i));
    }
  }
  Iet out = Iet::from_images(t.field_ptr(), std::move(lengths), images);
  out.set_premerge_count(t.size());
  return out;
}

Iet compose(const Iet& outer, const Iet& inner, bool merge) {
  const Field& field = inner.field();
  if (!(outer.total() == inner.total())) throw InputError("compose: IETs live on different intervals");
  std::vector<FieldElement> cuts = inner.left_endpoints();
  for (const auto& c : outer.discontinuities()) cuts.push_back(inner.apply_inverse(c));
  sort_unique(field, cuts);
  std::vector<FieldElement> lengths, images;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const FieldElement& a = cuts[k];
    const FieldElement b = k + 1 < cuts.size() ? cuts[k + 1] : inner.total();
    lengths.push_back(b - a);
    images.push_back(outer.apply(inner.apply(a)));
  }
  Iet out = Iet::from_images(inner.field_ptr(), std::move(lengths), images);
  return merge ? canonical_merge(out) : out;
}

Iet inverse(const Iet& t) {
  std::vector<FieldElement> lengths, images;
  for (int k = 1; k <= t.size(); ++k) {
    const int i = t.permutation()(k) - 1;
    lengths.push_back(t.lengths()[i]);
    images.push_back(t.left_endpoints()[i]);
  }
  return Iet::from_images(t.field_ptr(), std::move(lengths), images);
}

Iet power(const Iet& t, int p) {
  if (p < 0) return power(inverse(t), -p);
  Iet result = canonical_merge(Iet::identity(t.field_ptr(), t.total()));
  for (int k = 0; k < p; ++k) result = compose(t, result, true);
  return result;
}

XiPermutation xi(const Iet& t) {
  const int r = t.size();
  const Permutation& pi = t.permutation();
  XiPermutation x;
  x.images.assign(r + 1, -1);
  x.images[0] = pi(1) - 1;
  for (int j = 1; j <= r; ++j) {
    x.images[j] = j == pi(r) ? r : pi(pi.inverse(j) + 1) - 1;
  }
  return x;
}

std::vector<std::vector<int>> xi_orbits(const Iet& t) { return xi(t).cycles(); }

// ---------------------------------------------------------------------------
// Drift and periodicity

Rational DriftCertificate::value(const FieldElement& x) const {
  const Rational v = coordinate < 0 ? x.constant() : x.coefficient(coordinate);
  return orientation > 0 ? v : Rational(-v);
}

long DriftCertificate::max_steps_for(const FieldElement& delta) const {
  const Rational v = value(delta);
  if (sgn(v) < 0) return -1;
  const Rational q = v / min_step;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.fits_slong_p() ? f.get_si() : LONG_MAX;
}

std::optional<DriftCertificate> positive_drift(const Iet& t) {
  std::vector<int> coords{-1};
  for (const auto& tr : t.translations()) {
    for (const auto& term : tr.terms()) coords.push_back(term.first);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  for (int c : coords) {
    for (int orientation : {1, -1}) {
      DriftCertificate d{c, orientation, 0, 0};
      bool ok = true;
      for (std::size_t i = 0; i < t.translations().size() && ok; ++i) {
        const Rational v = d.value(t.translations()[i]);
        if (sgn(v) <= 0) {
          ok = false;
        } else if (i == 0) {
          d.min_step = d.max_step = v;
        } else {
          d.min_step = std::min(d.min_step, v);
          d.max_step = std::max(d.max_step, v);
        }
      }
      if (ok) return d;
    }
  }
  return std::nullopt;
}

PeriodicSearch find_periodic_interval(const Iet& t, int p_max) {
  if (p_max < 1) throw InputError("find_periodic_interval: p_max must be >= 1");
  PeriodicSearch out;
  out.bound = p_max;
  if (positive_drift(t)) {
    out.aperiodic_certified = true;
    return out;
  }
  // A maximal periodic interval starts on the orbit of some left endpoint,
  // and T^p fixes that endpoint.
  const auto& starts = t.left_endpoints();
  std::vector<FieldElement> current = starts;
  for (int p = 1; p <= p_max; ++p) {
    for (std::size_t k = 0; k < starts.size(); ++k) {
      current[k] = t.apply(current[k]);
      if (current[k] == starts[k]) {
        const Iet tp = power(t, p);
        const int i = tp.interval_of(starts[k]);
        out.witness = PeriodicWitness{p, tp.interval(i)};
        return out;
      }
    }
  }
  return out;
}

}  // namespace ietlab
