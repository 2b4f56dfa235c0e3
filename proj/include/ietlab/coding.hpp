#pragma once

// Natural codings of interval exchanges, their languages and Rauzy graphs.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

using Symbol = int;
using Word = std::vector<Symbol>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  /// A, B, C, ... (A27, A28, ... past Z).
  static Alphabet letters(int size);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::string spell(const Word& w) const;
  /// Greedy longest-match tokenization; throws InputError on unknown text.
  Word parse(std::string_view text) const;

 private:
  std::vector<std::string> names_;
};

class ReturnBudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Cylinder {
  Interval interval;
  Word word;
};

/// An IET together with the partition coded by its alphabet: symbol i codes
/// interval i of `iet()`. Marked points are handled by refining the base IET
/// so that every cut is an interval endpoint.
class CodedSystem {
 public:
  CodedSystem(Iet iet, Alphabet alphabet);
  explicit CodedSystem(Iet iet);

  /// Coding of `base` by its discontinuities and the marked points. Marked
  /// points equal to a discontinuity are merged with it.
  static CodedSystem refine(const Iet& base, const std::vector<FieldElement>& marked);

  CodedSystem(const CodedSystem& other);
  CodedSystem& operator=(const CodedSystem& other);

  const Iet& iet() const { return iet_; }
  const Field& field() const { return iet_.field(); }
  const Alphabet& alphabet() const { return alphabet_; }
  /// The cut points gamma'_1 < ... < gamma'_qbar (left endpoints except 0).
  std::vector<FieldElement> cut_points() const { return iet_.discontinuities(); }
  int qbar() const { return iet_.size() - 1; }

  Word code(const FieldElement& x, int n) const;
  /// The n-cylinders in left-to-right order; their intervals tile the domain.
  const std::vector<Cylinder>& cylinder_partition(int n) const;
  /// Lexicographically sorted.
  std::vector<Word> words_of_length(int n) const;
  bool word_in_language(const Word& w) const;
  /// The interval [w], or nullopt for words outside the language.
  std::optional<Interval> cylinder(const Word& w) const;

 private:
  Iet iet_;
  Alphabet alphabet_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<Cylinder>> partitions_;
};

struct RauzyEdge {
  int from = 0;
  int to = 0;
  Word label;
};

struct RauzyGraph {
  int order = 0;
  std::vector<Word> vertices;  // sorted
  std::vector<RauzyEdge> edges;  // sorted by label

  int vertex_index(const Word& w) const;  // -1 if absent
};

RauzyGraph rauzy_graph(const CodedSystem& sys, int n);

struct Connectivity {
  bool connected = true;
  /// Vertex indices per weakly connected component, each sorted, components
  /// ordered by their smallest vertex.
  std::vector<std::vector<int>> components;
};

Connectivity connected_undirected(const RauzyGraph& g);

/// Byte-stable DOT rendering: vertices and edges in lexicographic order.
std::string to_dot(const RauzyGraph& g, const Alphabet& alphabet, std::string_view name = "");

struct SpecialWord {
  Word word;
  /// A(w), ordered left to right by the position of T[aw] inside [w].
  std::vector<Symbol> left_extensions;
  /// D(w), increasing.
  std::vector<Symbol> right_extensions;
  /// D(aw) for each a of left_extensions, same order.
  std::vector<std::vector<Symbol>> right_of_left;
};

struct SpecialWords {
  std::vector<SpecialWord> left, right, bispecial;
};

SpecialWords special_words(const CodedSystem& sys, const RauzyGraph& g);

struct ReturnPath {
  Word base;
  Word label;
};

/// Return paths of vertex v, computed from the first-return map of T on [v].
/// Labels are distinct and sorted by (length, lexicographic).
std::vector<ReturnPath> return_paths(const CodedSystem& sys, const Word& v, long budget = 1'000'000);

/// Number of occurrences of every symbol of the alphabet in `label`.
std::vector<long> occurrence_counts(const Word& label, int alphabet_size);

}  // namespace ietlab
