#pragma once

// Interval exchange transformations with exact endpoints.
//
// Conventions: intervals are half-open [a, b). Interval i (1-based in the
// permutation, 0-based in every index below) is I_i = [gamma_{i-1}, gamma_i).
// The permutation lists the image order: from left to right the images are
// T I_{pi(1)}, ..., T I_{pi(r)}.

#include <memory>
#include <optional>
#include <vector>

#include "ietlab/exactfield.hpp"

namespace ietlab {

class Permutation {
 public:
  Permutation() = default;
  /// 1-based images pi(1..r); throws InputError unless a bijection of {1..r}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int r);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_.at(k - 1); }
  int inverse(int v) const { return inverse_.at(v - 1); }
  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

/// Permutation of {0..r} pairing interval endpoints around the singularities.
struct XiPermutation {
  std::vector<int> images;

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int j) const { return images.at(j); }
  std::vector<std::vector<int>> cycles() const;
  std::vector<int> orbit(int j) const;
};

struct Interval {
  FieldElement lo, hi;
};

class Iet {
 public:
  Iet(std::shared_ptr<const Field> field, std::vector<FieldElement> lengths, Permutation permutation);

  /// Builds the IET whose interval i has the given length and whose image
  /// starts at image_lefts[i]. The images must tile [0, total).
  static Iet from_images(std::shared_ptr<const Field> field, std::vector<FieldElement> lengths,
                         const std::vector<FieldElement>& image_lefts);
  static Iet identity(std::shared_ptr<const Field> field, const FieldElement& total);
  /// x -> x + alpha mod 1 as the 2-IET (1 - alpha, alpha), pi = (2, 1).
  static Iet rotation(std::shared_ptr<const Field> field, const FieldElement& alpha);

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }

  int size() const { return static_cast<int>(lengths_.size()); }
  const std::vector<FieldElement>& lengths() const { return lengths_; }
  const Permutation& permutation() const { return permutation_; }
  const FieldElement& total() const { return total_; }

  /// Left endpoints 0 = gamma_0 < gamma_1 < ... < gamma_{r-1}.
  const std::vector<FieldElement>& left_endpoints() const { return left_; }
  FieldElement right_endpoint(int i) const { return left_[i] + lengths_[i]; }
  Interval interval(int i) const { return {left_[i], right_endpoint(i)}; }
  const std::vector<FieldElement>& translations() const { return translation_; }
  /// Left endpoint of T I_i.
  FieldElement image_left(int i) const { return left_[i] + translation_[i]; }

  /// gamma_1 .. gamma_{r-1}.
  std::vector<FieldElement> discontinuities() const;
  /// The discontinuity set of T^{-1}: left endpoints of the images except 0,
  /// increasing.
  std::vector<FieldElement> inverse_discontinuities() const;

  bool contains(const FieldElement& x) const;
  /// 0-based index of the interval containing x; throws InputError when x is
  /// outside [0, total).
  int interval_of(const FieldElement& x) const;
  FieldElement apply(const FieldElement& x) const;
  FieldElement apply_inverse(const FieldElement& x) const;

  /// Number of intervals before adjacent co-moving intervals were merged
  /// (equals size() unless produced by compose/power/canonical_merge).
  int premerge_count() const { return premerge_count_; }
  void set_premerge_count(int n) { premerge_count_ = n; }

  friend bool operator==(const Iet& a, const Iet& b) {
    return a.lengths_ == b.lengths_ && a.permutation_ == b.permutation_;
  }

 private:
  std::shared_ptr<const Field> field_;
  std::vector<FieldElement> lengths_;
  Permutation permutation_;
  FieldElement total_;
  std::vector<FieldElement> left_;
  std::vector<FieldElement> translation_;
  std::vector<FieldElement> image_left_by_position_;
  int premerge_count_ = 0;
};

/// outer o inner, i.e. x -> outer(inner(x)).
Iet compose(const Iet& outer, const Iet& inner, bool merge = true);
Iet inverse(const Iet& t);
/// t^p for any integer p (negative powers go through the inverse).
Iet power(const Iet& t, int p);
/// Merges adjacent intervals with equal translation.
Iet canonical_merge(const Iet& t);

XiPermutation xi(const Iet& t);
std::vector<std::vector<int>> xi_orbits(const Iet& t);

/// A linear functional on coefficient vectors that is positive on every
/// translation of an IET. Each step of an orbit then moves the functional by
/// an amount in [min_step, max_step], which bounds hitting times exactly.
struct DriftCertificate {
  int coordinate = -1;  // -1: the rational constant, otherwise a generator index
  int orientation = 1;
  Rational min_step, max_step;

  Rational value(const FieldElement& x) const;
  /// Largest n such that n steps could move the functional by `delta`, or -1
  /// if no n >= 0 can (delta must then be negative or non-reachable).
  long max_steps_for(const FieldElement& delta) const;
};

std::optional<DriftCertificate> positive_drift(const Iet& t);

struct PeriodicWitness {
  int period = 0;
  Interval interval;
};

struct PeriodicSearch {
  std::optional<PeriodicWitness> witness;
  /// True when a drift certificate rules out periodic points altogether.
  bool aperiodic_certified = false;
  int bound = 0;
};

/// Looks for a continuity interval of some T^p, p <= p_max, with zero
/// translation.
PeriodicSearch find_periodic_interval(const Iet& t, int p_max = 64);

}  // namespace ietlab
