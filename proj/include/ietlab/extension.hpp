#pragma once

// Z/NZ skew products T_f(x, s) = (Tx, s + f(x)) realised as interval
// exchanges on [0, N).

#include <cstdint>
#include <vector>

#include "ietlab/coding.hpp"

namespace ietlab {

/// Step function f = a_1 on [0, z_1), a_i on [z_{i-1}, z_i), a_{q+1} on
/// [z_q, total), with values taken mod `modulus`.
struct SkewSpec {
  std::vector<FieldElement> marked;
  std::vector<std::int64_t> values;
  std::int64_t modulus = 1;
};

struct LiftedSymbol {
  Symbol base = 0;
  int sheet = 0;

  friend bool operator==(const LiftedSymbol&, const LiftedSymbol&) = default;
};

/// Where sheet s is placed inside [0, N).
enum class SheetLayout {
  /// Sheet s occupies [(-s mod N), (-s mod N) + 1). This placement gives the
  /// interval numbering of the classical 16-interval example.
  Reflected,
  /// Sheet s occupies [s, s + 1).
  Direct,
};

struct SkewOptions {
  bool merge = false;
  SheetLayout layout = SheetLayout::Reflected;
};

class SkewProduct {
 public:
  SkewProduct(const Iet& base, SkewSpec spec, SkewOptions options = {});

  const SkewSpec& spec() const { return spec_; }
  int modulus() const { return static_cast<int>(spec_.modulus); }
  /// Base IET refined at the marked points (the coding of L-bar).
  const CodedSystem& base_coding() const { return base_; }
  /// f-value of every base symbol (reduced to [0, N)).
  const std::vector<std::int64_t>& symbol_values() const { return values_; }
  /// The skew IET on [0, N); merged if requested.
  const Iet& iet() const { return merge_ ? merged_ : lifted_.iet(); }
  /// Natural coding of the unmerged skew IET, symbols named like "A0", "B1".
  const CodedSystem& lifted_coding() const { return lifted_; }
  int premerge_count() const { return lifted_.iet().size(); }

  int position_of_sheet(int sheet) const;
  Symbol symbol_of(LiftedSymbol s) const;
  LiftedSymbol lifted_symbol(Symbol s) const;

 private:
  SkewSpec spec_;
  SkewOptions options_;
  CodedSystem base_;
  std::vector<std::int64_t> values_;
  CodedSystem lifted_;
  Iet merged_;
  bool merge_;
};

/// Checks  ab in L-bar  <=>  a_s b_{s + f(a)} in L  for every pair and sheet.
bool lift_edge_rule(const SkewProduct& skew);

Word project(const SkewProduct& skew, const Word& lifted);
/// Lifts a word of L-bar starting on `sheet`; throws InputError when the base
/// word is not in the language.
Word lift(const SkewProduct& skew, const Word& base, int sheet);

}  // namespace ietlab
