#include "ietlab/coding.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "ietlab/union_find.hpp"

namespace ietlab {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty symbol name");
  }
}

Alphabet Alphabet::letters(int size) {
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) {
    names.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "A" + std::to_string(i + 1));
  }
  return Alphabet(std::move(names));
}

std::string Alphabet::spell(const Word& w) const {
  std::string s;
  for (Symbol x : w) s += name(x);
  return s;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    int best = -1;
    std::size_t best_len = 0;
    for (int s = 0; s < size(); ++s) {
      const auto& n = names_[s];
      if (n.size() > best_len && text.substr(pos, n.size()) == n) {
        best = s;
        best_len = n.size();
      }
    }
    if (best < 0) throw InputError("cannot read a symbol at '" + std::string(text.substr(pos)) + "'");
    w.push_back(best);
    pos += best_len;
  }
  return w;
}

// ---------------------------------------------------------------------------
// CodedSystem

CodedSystem::CodedSystem(Iet iet, Alphabet alphabet) : iet_(std::move(iet)), alphabet_(std::move(alphabet)) {
  if (alphabet_.size() != iet_.size()) throw InputError("alphabet size must equal the number of intervals");
}

CodedSystem::CodedSystem(Iet iet) : CodedSystem(iet, Alphabet::letters(iet.size())) {}

CodedSystem::CodedSystem(const CodedSystem& other) : iet_(other.iet_), alphabet_(other.alphabet_) {
  std::lock_guard lock(other.mutex_);
  partitions_ = other.partitions_;
}

CodedSystem& CodedSystem::operator=(const CodedSystem& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  iet_ = other.iet_;
  alphabet_ = other.alphabet_;
  partitions_ = other.partitions_;
  return *this;
}

CodedSystem CodedSystem::refine(const Iet& base, const std::vector<FieldElement>& marked) {
  const Field& field = base.field();
  std::vector<FieldElement> cuts = base.discontinuities();
  for (const auto& z : marked) {
    if (field.sign(z) <= 0 || !field.less(z, base.total()))
      throw InputError("marked point " + field.format(z) + " is not inside (0, total)");
    cuts.push_back(z);
  }
  std::sort(cuts.begin(), cuts.end(), [&](const auto& a, const auto& b) { return field.less(a, b); });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<FieldElement> lengths, images;
  FieldElement prev;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const FieldElement next = k < cuts.size() ? cuts[k] : base.total();
    lengths.push_back(next - prev);
    images.push_back(base.apply(prev));
    prev = next;
  }
  Iet refined = Iet::from_images(base.field_ptr(), std::move(lengths), images);
  return CodedSystem(std::move(refined));
}

Word CodedSystem::code(const FieldElement& x, int n) const {
  Word w;
  w.reserve(n);
  FieldElement y = x;
  for (int k = 0; k < n; ++k) {
    const int i = iet_.interval_of(y);
    w.push_back(i);
    y += iet_.translations()[i];
  }
  return w;
}

const std::vector<Cylinder>& CodedSystem::cylinder_partition(int n) const {
  if (n < 1) throw InputError("cylinder length must be >= 1");
  std::lock_guard lock(mutex_);
  if (auto it = partitions_.find(n); it != partitions_.end()) return it->second;

  const Field& f = field();
  // Boundaries of n-cylinders: T^{-k}(cuts) for 0 <= k < n.
  std::vector<FieldElement> layer = cut_points();
  std::vector<FieldElement> points = layer;
  for (int k = 1; k < n; ++k) {
    std::vector<FieldElement> next;
    next.reserve(layer.size());
    for (const auto& p : layer) {
      FieldElement q = iet_.apply_inverse(p);
      if (!q.is_zero()) next.push_back(std::move(q));
    }
    points.insert(points.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(points.begin(), points.end(), [&](const auto& a, const auto& b) { return f.less(a, b); });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Cylinder> cyl;
  cyl.reserve(points.size() + 1);
  FieldElement lo;
  for (std::size_t k = 0; k <= points.size(); ++k) {
    FieldElement hi = k < points.size() ? points[k] : iet_.total();
    cyl.push_back({{lo, hi}, code(lo, n)});
    lo = std::move(hi);
  }
  std::vector<Word> seen;
  seen.reserve(cyl.size());
  for (const auto& c : cyl) seen.push_back(c.word);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::logic_error("two cylinders share a word: the coding is not an interval partition");
  return partitions_.emplace(n, std::move(cyl)).first->second;
}

std::vector<Word> CodedSystem::words_of_length(int n) const {
  std::vector<Word> words;
  for (const auto& c : cylinder_partition(n)) words.push_back(c.word);
  std::sort(words.begin(), words.end());
  return words;
}

std::optional<Interval> CodedSystem::cylinder(const Word& w) const {
  if (w.empty()) return std::nullopt;
  const Field& f = field();
  for (Symbol s : w) {
    if (s < 0 || s >= iet_.size()) return std::nullopt;
  }
  // J = T^k [w_0 .. w_k], tracked together with the accumulated translation.
  Interval j = iet_.interval(w[0]);
  FieldElement shift;
  for (std::size_t k = 1; k < w.size(); ++k) {
    const FieldElement& t = iet_.translations()[w[k - 1]];
    j.lo += t;
    j.hi += t;
    shift += t;
    const Interval target = iet_.interval(w[k]);
    if (f.less(j.lo, target.lo)) j.lo = target.lo;
    if (f.less(target.hi, j.hi)) j.hi = target.hi;
    if (!f.less(j.lo, j.hi)) return std::nullopt;
  }
  return Interval{j.lo - shift, j.hi - shift};
}

bool CodedSystem::word_in_language(const Word& w) const { return cylinder(w).has_value(); }

// ---------------------------------------------------------------------------
// Rauzy graphs

int RauzyGraph::vertex_index(const Word& w) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
  if (it == vertices.end() || *it != w) return -1;
  return static_cast<int>(it - vertices.begin());
}

RauzyGraph rauzy_graph(const CodedSystem& sys, int n) {
  if (n < 1) throw InputError("Rauzy graph order must be >= 1");
  RauzyGraph g;
  g.order = n;
  g.vertices = sys.words_of_length(n);
  for (auto& label : sys.words_of_length(n + 1)) {
    const Word from(label.begin(), label.end() - 1);
    const Word to(label.begin() + 1, label.end());
    g.edges.push_back({g.vertex_index(from), g.vertex_index(to), std::move(label)});
  }
  return g;
}

Connectivity connected_undirected(const RauzyGraph& g) {
  UnionFind uf(g.vertices.size());
  for (const auto& e : g.edges) uf.unite(e.from, e.to);
  std::map<std::size_t, std::vector<int>> by_root;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) by_root[uf.find(v)].push_back(static_cast<int>(v));
  Connectivity c;
  for (auto& [root, members] : by_root) c.components.push_back(std::move(members));
  std::sort(c.components.begin(), c.components.end());
  c.connected = c.components.size() <= 1;
  return c;
}

std::string to_dot(const RauzyGraph& g, const Alphabet& alphabet, std::string_view name) {
  // Sorted by spelled text so the output does not depend on symbol numbering.
  std::vector<std::string> vertices;
  for (const auto& v : g.vertices) vertices.push_back(alphabet.spell(v));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : g.edges)
    edges.emplace_back(alphabet.spell(e.label), vertices[e.from], vertices[e.to]);
  std::sort(vertices.begin(), vertices.end());
  std::sort(edges.begin(), edges.end());
  std::ostringstream out;
  out << "digraph " << (name.empty() ? "G" + std::to_string(g.order) : std::string(name)) << " {\n";
  for (const auto& v : vertices) out << "  \"" << v << "\";\n";
  for (const auto& [label, from, to] : edges)
    out << "  \"" << from << "\" -> \"" << to << "\" [label=\"" << label << "\"];\n";
  out << "}\n";
  return out.str();
}

SpecialWords special_words(const CodedSystem& sys, const RauzyGraph& g) {
  const std::size_t nv = g.vertices.size();
  std::vector<std::set<Symbol>> in(nv), out(nv);
  for (const auto& e : g.edges) {
    out[e.from].insert(e.label.back());
    in[e.to].insert(e.label.front());
  }
  const Field& f = sys.field();
  SpecialWords result;
  for (std::size_t v = 0; v < nv; ++v) {
    if (in[v].size() < 2 && out[v].size() < 2) continue;
    SpecialWord sw;
    sw.word = g.vertices[v];
    sw.right_extensions.assign(out[v].begin(), out[v].end());
    std::vector<std::pair<FieldElement, Symbol>> placed;
    for (Symbol a : in[v]) {
      Word aw{a};
      aw.insert(aw.end(), sw.word.begin(), sw.word.end());
      const auto cyl = sys.cylinder(aw);
      placed.emplace_back(sys.iet().apply(cyl->lo), a);
    }
    std::sort(placed.begin(), placed.end(), [&](const auto& x, const auto& y) { return f.less(x.first, y.first); });
    for (const auto& [pos, a] : placed) {
      sw.left_extensions.push_back(a);
      std::vector<Symbol> d;
      Word awb{a};
      awb.insert(awb.end(), sw.word.begin(), sw.word.end());
      awb.push_back(0);
      for (Symbol b : sw.right_extensions) {
        awb.back() = b;
        if (sys.word_in_language(awb)) d.push_back(b);
      }
      sw.right_of_left.push_back(std::move(d));
    }
    const bool left = in[v].size() > 1, right = out[v].size() > 1;
    if (left) result.left.push_back(sw);
    if (right) result.right.push_back(sw);
    if (left && right) result.bispecial.push_back(sw);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Return paths

std::vector<ReturnPath> return_paths(const CodedSystem& sys, const Word& v, long budget) {
  const auto home = sys.cylinder(v);
  if (!home) throw InputError("return_paths: base word is not in the language");
  const Field& f = sys.field();
  const Iet& t = sys.iet();
  const std::size_t n = v.size();

  struct Piece {
    Interval image;  // T^k of the piece
    Word letters;    // codes of the departures so far
  };
  std::deque<Piece> work{{*home, {}}};
  std::set<Word> labels;
  long steps = 0;

  const auto finish = [&](const Word& letters) {
    Word full = letters;
    full.insert(full.end(), v.begin(), v.end());
    labels.emplace(full.begin() + static_cast<long>(n), full.end());
  };

  while (!work.empty()) {
    Piece piece = std::move(work.front());
    work.pop_front();
    // Split the current image at cut points so each part has one code.
    FieldElement lo = piece.image.lo;
    while (f.less(lo, piece.image.hi)) {
      if (++steps > budget)
        throw ReturnBudgetExceeded("first-return computation exceeded " + std::to_string(budget) + " steps");
      const int s = t.interval_of(lo);
      FieldElement hi = t.right_endpoint(s);
      if (f.less(piece.image.hi, hi)) hi = piece.image.hi;
      Word letters = piece.letters;
      letters.push_back(s);
      const FieldElement& tr = t.translations()[s];
      const Interval img{lo + tr, hi + tr};
      // Separate the part landing in [v] (returned) from the rest.
      std::vector<FieldElement> bounds{img.lo};
      for (const auto* b : {&home->lo, &home->hi}) {
        if (f.less(img.lo, *b) && f.less(*b, img.hi)) bounds.push_back(*b);
      }
      bounds.push_back(img.hi);
      for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const Interval part{bounds[k], bounds[k + 1]};
        const bool inside = !f.less(part.lo, home->lo) && !f.less(home->hi, part.hi);
        if (inside) {
          finish(letters);
        } else {
          work.push_back({part, letters});
        }
      }
      lo = std::move(hi);
    }
  }

  std::vector<ReturnPath> out;
  for (const auto& l : labels) out.push_back({v, l});
  std::sort(out.begin(), out.end(), [](const ReturnPath& a, const ReturnPath& b) {
    return a.label.size() != b.label.size() ? a.label.size() < b.label.size() : a.label < b.label;
  });
  for (const auto& p : out) {
    Word spelled = v;
    spelled.insert(spelled.end(), p.label.begin(), p.label.end());
    if (!sys.word_in_language(spelled)) throw std::logic_error("return path spells a word outside the language");
  }
  return out;
}

std::vector<long> occurrence_counts(const Word& label, int alphabet_size) {
  if (label.empty()) throw InputError("occurrence_counts: empty word");
  std::vector<long> counts(alphabet_size, 0);
  for (Symbol s : label) counts.at(s) += 1;
  return counts;
}

}  // namespace ietlab
