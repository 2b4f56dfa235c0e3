#include "ietlab/extension.hpp"

namespace ietlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

const SkewSpec& validated(const Iet& base, const SkewSpec& spec) {
  const Field& f = base.field();
  if (spec.modulus < 1) throw InputError("skew modulus must be >= 1");
  if (spec.values.size() != spec.marked.size() + 1)
    throw InputError("a step function with q marked points needs q + 1 values");
  for (std::size_t k = 0; k < spec.marked.size(); ++k) {
    const auto& z = spec.marked[k];
    if (f.sign(z) <= 0 || !f.less(z, base.total()))
      throw InputError("marked point " + f.format(z) + " is not inside (0, total)");
    if (k > 0 && !f.less(spec.marked[k - 1], z)) throw InputError("marked points must be strictly increasing");
  }
  return spec;
}

int sheet_at(int position, int n, SheetLayout layout) {
  return layout == SheetLayout::Direct ? position : static_cast<int>(mod(-position, n));
}

std::vector<std::int64_t> step_values(const CodedSystem& coded, const SkewSpec& spec) {
  const Field& f = coded.field();
  std::vector<std::int64_t> out;
  for (int i = 0; i < coded.iet().size(); ++i) {
    const FieldElement& x = coded.iet().left_endpoints()[i];
    std::size_t k = 0;
    while (k < spec.marked.size() && !f.less(x, spec.marked[k])) ++k;
    out.push_back(mod(spec.values[k], spec.modulus));
  }
  return out;
}

CodedSystem build_lifted(const CodedSystem& base, const std::vector<std::int64_t>& values, int n,
                         SheetLayout layout) {
  const Iet& t = base.iet();
  const int r = t.size();
  std::vector<FieldElement> lengths, images;
  std::vector<std::string> names;
  for (int p = 0; p < n; ++p) {
    const int s = sheet_at(p, n, layout);
    for (int i = 0; i < r; ++i) {
      lengths.push_back(t.lengths()[i]);
      const int target = static_cast<int>(mod(s + values[i], n));
      const int target_pos = sheet_at(target, n, layout);  // the layouts are involutions
      images.push_back(t.image_left(i) + t.total() * Rational(target_pos));
      names.push_back(base.alphabet().name(i) + std::to_string(s));
    }
  }
  Iet lifted = Iet::from_images(t.field_ptr(), std::move(lengths), images);
  return CodedSystem(std::move(lifted), Alphabet(std::move(names)));
}

}  // namespace

SkewProduct::SkewProduct(const Iet& base, SkewSpec spec, SkewOptions options)
    : spec_(validated(base, spec)),
      options_(options),
      base_(CodedSystem::refine(base, spec_.marked)),
      values_(step_values(base_, spec_)),
      lifted_(build_lifted(base_, values_, static_cast<int>(spec_.modulus), options.layout)),
      merged_(canonical_merge(lifted_.iet())),
      merge_(options.merge) {}

int SkewProduct::position_of_sheet(int sheet) const { return sheet_at(sheet, modulus(), options_.layout); }

Symbol SkewProduct::symbol_of(LiftedSymbol s) const {
  return position_of_sheet(s.sheet) * base_.alphabet().size() + s.base;
}

LiftedSymbol SkewProduct::lifted_symbol(Symbol s) const {
  const int r = base_.alphabet().size();
  return {s % r, sheet_at(s / r, modulus(), options_.layout)};
}

bool lift_edge_rule(const SkewProduct& skew) {
  const int r = skew.base_coding().alphabet().size();
  const int n = skew.modulus();
  for (Symbol a = 0; a < r; ++a) {
    for (Symbol b = 0; b < r; ++b) {
      const bool in_base = skew.base_coding().word_in_language({a, b});
      for (int s = 0; s < n; ++s) {
        for (int s2 = 0; s2 < n; ++s2) {
          const bool expected = in_base && s2 == mod(s + skew.symbol_values()[a], n);
          const Word lifted{skew.symbol_of({a, s}), skew.symbol_of({b, s2})};
          if (skew.lifted_coding().word_in_language(lifted) != expected) return false;
        }
      }
    }
  }
  return true;
}

Word project(const SkewProduct& skew, const Word& lifted) {
  Word w;
  w.reserve(lifted.size());
  for (Symbol s : lifted) w.push_back(skew.lifted_symbol(s).base);
  return w;
}

Word lift(const SkewProduct& skew, const Word& base, int sheet) {
  if (base.empty()) return {};
  if (!skew.base_coding().word_in_language(base)) throw InputError("lift: word is not in the base language");
  Word out;
  out.reserve(base.size());
  std::int64_t s = mod(sheet, skew.modulus());
  for (Symbol a : base) {
    out.push_back(skew.symbol_of({a, static_cast<int>(s)}));
    s = mod(s + skew.symbol_values()[a], skew.modulus());
  }
  return out;
}

}  // namespace ietlab
