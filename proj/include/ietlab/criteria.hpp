#pragma once

// Minimality deciders for interval exchanges and their Z/NZ extensions, the
// closed-form gcd criteria over rotations, and a few side checks.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ietlab/connections.hpp"
#include "ietlab/extension.hpp"

namespace ietlab {

/// Raised when two parts of the machinery contradict each other (e.g. a
/// return-path count that differs from R + 1). Never a user error.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

enum class Status { Minimal, NotMinimal, Unknown };

/// "minimal", "not_minimal", "unknown".
std::string to_string(Status s);

struct Bounds {
  int n_max = 4096;
  int p_max = 64;
  long return_budget = 1'000'000;
};

struct PeriodicEvidence {
  int period = 0;
  Interval interval;
};

struct ComponentEvidence {
  RauzyGraph graph;
  Alphabet alphabet;
  std::vector<std::vector<int>> components;  // vertex indices into graph
};

struct GcdWitness {
  Integer N;
  std::vector<Integer> d;
  Integer gcd;
  Word vertex;
  std::vector<Word> return_labels;
  Alphabet alphabet;
  int M = 0;
  int R = 0;
};

struct TupleEvidence {
  std::string form;            // "(i)", "zeta1=2alpha", "lenient", ...
  std::vector<Integer> tuple;  // N first
  Integer gcd;
};

/// beta = m*alpha + n.
struct LatticeEvidence {
  Integer m, n;
  std::vector<Integer> primes;  // primes p with m = n = 0 mod p (shifted for the variant)
};

struct ExhaustedEvidence {
  std::string what;  // "connections", "periodicity", "orbits"
  int bound = 0;
  std::vector<FieldElement> unresolved;
};

using Evidence = std::variant<std::monostate, PeriodicEvidence, ComponentEvidence, GcdWitness, TupleEvidence,
                              LatticeEvidence, ExhaustedEvidence>;

struct Verdict {
  Status status = Status::Unknown;
  std::string criterion;
  Evidence evidence;
  std::vector<std::string> notes;
};

/// Recomputes the claim carried by the evidence: no crossing edge between
/// components / a connected graph, and the gcd of the stored tuple.
bool reverify(const Verdict& v);

Integer gcd_all(const std::vector<Integer>& values);  // gcd(x, 0) = x, gcd() = 0

// ---------------------------------------------------------------------------
// General deciders

Verdict minimal_general(const CodedSystem& sys, const Bounds& bounds = {});
Verdict minimal_general(const Iet& t, const Bounds& bounds = {});

struct ExtensionOptions {
  Bounds bounds;
  /// Base vertex of G_{M+1}; the lexicographically least one by default.
  std::optional<Word> vertex;
  /// Skip the base minimality check (caller already certified it).
  bool base_certified = false;
};

Verdict minimal_extension(const Iet& base, const SkewSpec& spec, const ExtensionOptions& options = {});

/// The f-value of every symbol of the refined base coding, unreduced.
std::vector<Integer> symbol_weights(const CodedSystem& refined, const SkewSpec& spec);

// ---------------------------------------------------------------------------
// Closed forms over the rotation by alpha (1 - alpha, alpha; permutation 21)

struct RotationContext {
  std::shared_ptr<const Field> field;
  FieldElement alpha;  // irrational, one generator
};

/// The rotation context of `t` if it is a two-interval exchange with
/// permutation 21 on [0, 1).
std::optional<RotationContext> as_rotation(const Iet& t);

/// f = 1 on [0, beta) (variant: f = 1 on [beta, 1)), N prime for a full
/// decision.
Verdict veechN_closed_form(const RotationContext& ctx, const FieldElement& beta, long N, bool variant);

enum class CmbexForm { I, II, III, IV, V, VI };
std::string to_string(CmbexForm f);
/// zeta_1 as k*alpha + n for the form; (v) and (vi) require m >= 2.
std::pair<long, long> cmbex_zeta(CmbexForm form, long m);
Verdict cmbex_closed_form(const RotationContext& ctx, CmbexForm form, long m, const FieldElement& zeta, long a1,
                          long a2, long N);
/// Detects the form of zeta among (i)..(vi), preferring the smallest m.
std::optional<std::pair<CmbexForm, long>> detect_cmbex(const RotationContext& ctx, const FieldElement& zeta);

enum class Cmb3Case { FirstIsTwoAlpha, SecondIsTwoAlpha, TwoAndThreeAlpha };
std::optional<Cmb3Case> detect_cmb3(const RotationContext& ctx, const FieldElement& z1, const FieldElement& z2);
Verdict cmb3_closed_form(const RotationContext& ctx, const FieldElement& z1, const FieldElement& z2,
                         const std::vector<long>& a, long N);

/// gcd over N and the step values when the marked orbits and the
/// discontinuity orbits are infinite and pairwise disjoint. `strict` drops
/// the last value from the gcd. Unknown unless disjointness is certified.
Verdict idoc_closed_form(const Iet& base, const SkewSpec& spec, const Bounds& bounds = {}, bool strict = false);

// ---------------------------------------------------------------------------
// Side checks

struct MerrillResult {
  enum class Kind { Holds, Fails, Inapplicable } kind = Kind::Inapplicable;
  std::vector<Integer> e;  // cyclic differences
  std::vector<long> holds_for;   // d values that pass
  long failing_d = 0;
  std::vector<int> witness;      // indices of e summing to 0 mod N after scaling by failing_d
  bool off_lattice_pair = false; // some zeta_i - zeta_j is not in Z(alpha)
  std::string reason;
};
std::string to_string(MerrillResult::Kind k);

MerrillResult merrill_check(const RotationContext& ctx, const SkewSpec& spec, bool bounded_partial_quotients);

struct RamificationClause {
  std::string name;
  Integer value;
  Integer gcd;
  bool holds = false;
};

struct FullRamification {
  bool fully_ramified = false;
  XiPermutation xi;  // of the unmerged extension
  std::vector<int> orbit_of_zero;
  bool zero_one_same_orbit = false;
  std::vector<RamificationClause> clauses;
};

/// q = 2 only.
FullRamification fully_ramified(const Iet& base, const SkewSpec& spec);

struct UeInputs {
  Status minimality = Status::Unknown;
  std::optional<bool> fully_ramified;
  int q = 0;
  /// Empirical linear-recurrence constant, if a probe supplied one.
  std::optional<double> recurrence_constant;
};

struct UeAdvisory {
  std::string tag;  // "uniquely_ergodic_q2", "uniquely_ergodic_q1", "no_conclusion"
  bool conditional = true;
  std::string premise;
};

UeAdvisory ue_advisory(const UeInputs& in);

struct CirculantInstance {
  int N = 0;
  std::vector<int> epsilons;
};

struct CirculantResult {
  int rank = 0;
  int kernel_dimension = 0;
};

bool is_prime(long n);
CirculantResult circulant_kernel_check(const CirculantInstance& inst);
/// All epsilon in {-1,0,1}^N with zero sum, excluding the zero vector.
std::vector<CirculantInstance> admissible_circulants(int N);

// ---------------------------------------------------------------------------
// Conjecture probes

enum class ConjectureTarget { Cpa, Conj2, Remark };

struct ConjectureInstance {
  long m = 0, n = 0;  // zeta_1 = m*alpha + n
  long N = 2;
  long a1 = 0, a2 = 0;
  SurdSpec alpha;
};

struct ConjectureRow {
  ConjectureInstance instance;
  std::string rule;
  std::optional<Status> predicted;  // nullopt: the target says nothing
  Status observed = Status::Unknown;
  std::string agreement;  // "agree", "disagree", "n/a"
};

/// An irrational surd strictly inside (lo, hi), deterministic.
SurdSpec surd_between(const Rational& lo, const Rational& hi);

std::vector<ConjectureInstance> conjecture_grid(ConjectureTarget target, int size);
std::vector<ConjectureRow> conjecture_probe(ConjectureTarget target, const std::vector<ConjectureInstance>& grid,
                                            const Bounds& bounds = {});

}  // namespace ietlab
