#include "ietlab/criteria.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <sstream>

namespace ietlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::Minimal:
      return "minimal";
    case Status::NotMinimal:
      return "not_minimal";
    case Status::Unknown:
      break;
  }
  return "unknown";
}

Integer gcd_all(const std::vector<Integer>& values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(v)).get_mpz_t());
  return g;
}

namespace {

Status gcd_status(const Integer& g) { return g == 1 ? Status::Minimal : Status::NotMinimal; }

Verdict tuple_verdict(std::string criterion, std::string form, std::vector<Integer> tuple) {
  Verdict v;
  v.criterion = std::move(criterion);
  TupleEvidence ev{std::move(form), std::move(tuple), 0};
  ev.gcd = gcd_all(ev.tuple);
  v.status = gcd_status(ev.gcd);
  v.evidence = std::move(ev);
  return v;
}

bool divides(const Integer& p, const Integer& x) { return mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()) != 0; }

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

void require_unit_interior(const Field& f, const FieldElement& x, const std::string& what) {
  if (f.sign(x) <= 0 || !f.less(x, FieldElement(1))) throw InputError(what + " must lie in (0, 1)");
}

}  // namespace

bool reverify(const Verdict& v) {
  if (const auto* c = std::get_if<ComponentEvidence>(&v.evidence)) {
    const auto nv = c->graph.vertices.size();
    std::vector<int> comp(nv, -1);
    for (std::size_t k = 0; k < c->components.size(); ++k) {
      if (c->components[k].empty()) return false;
      for (int x : c->components[k]) {
        if (x < 0 || static_cast<std::size_t>(x) >= nv || comp[x] != -1) return false;
        comp[x] = static_cast<int>(k);
      }
    }
    if (std::count(comp.begin(), comp.end(), -1) != 0) return false;
    for (const auto& e : c->graph.edges) {
      if (comp[e.from] != comp[e.to]) return false;
    }
    const bool split = c->components.size() > 1;
    if (split != (v.status == Status::NotMinimal)) return false;
    // A single claimed component must really be connected.
    return split || connected_undirected(c->graph).connected;
  }
  if (const auto* g = std::get_if<GcdWitness>(&v.evidence)) {
    std::vector<Integer> all{g->N};
    all.insert(all.end(), g->d.begin(), g->d.end());
    const Integer recomputed = gcd_all(all);
    return recomputed == g->gcd && gcd_status(recomputed) == v.status;
  }
  if (const auto* t = std::get_if<TupleEvidence>(&v.evidence)) {
    const Integer recomputed = gcd_all(t->tuple);
    return recomputed == t->gcd && (v.status == Status::Unknown || gcd_status(recomputed) == v.status);
  }
  return true;
}

// ---------------------------------------------------------------------------

Verdict minimal_general(const CodedSystem& sys, const Bounds& bounds) {
  Verdict v;
  v.criterion = "general";
  const auto periodic = find_periodic_interval(sys.iet(), bounds.p_max);
  if (periodic.witness) {
    v.status = Status::NotMinimal;
    v.evidence = PeriodicEvidence{periodic.witness->period, periodic.witness->interval};
    return v;
  }
  const auto scan = find_primitive_connections(sys, bounds.n_max);
  auto g = rauzy_graph(sys, scan.M + 1);
  auto conn = connected_undirected(g);
  if (!conn.connected) {
    // A split Rauzy graph of any order gives a proper invariant union of
    // cylinders, so this holds even for an incomplete scan.
    v.status = Status::NotMinimal;
    v.evidence = ComponentEvidence{std::move(g), sys.alphabet(), std::move(conn.components)};
    return v;
  }
  if (!scan.complete()) {
    v.status = Status::Unknown;
    v.evidence = ExhaustedEvidence{"connections", bounds.n_max, scan.unresolved_sources};
    v.notes.push_back("connection scan exhausted at n_max = " + std::to_string(bounds.n_max));
    return v;
  }
  if (!periodic.aperiodic_certified) {
    v.status = Status::Unknown;
    v.evidence = ExhaustedEvidence{"periodicity", bounds.p_max, {}};
    v.notes.push_back("no periodic interval up to p_max, but aperiodicity is not certified");
    return v;
  }
  v.status = Status::Minimal;
  v.evidence = ComponentEvidence{std::move(g), sys.alphabet(), std::move(conn.components)};
  v.notes.push_back("M = " + std::to_string(scan.M));
  return v;
}

Verdict minimal_general(const Iet& t, const Bounds& bounds) { return minimal_general(CodedSystem(t), bounds); }

std::vector<Integer> symbol_weights(const CodedSystem& refined, const SkewSpec& spec) {
  const Field& f = refined.field();
  std::vector<Integer> out;
  for (const auto& x : refined.iet().left_endpoints()) {
    std::size_t k = 0;
    while (k < spec.marked.size() && !f.less(x, spec.marked[k])) ++k;
    out.emplace_back(static_cast<long>(spec.values.at(k)));
  }
  return out;
}

Verdict minimal_extension(const Iet& base, const SkewSpec& spec, const ExtensionOptions& options) {
  const SkewProduct skew(base, spec);  // validates the spec
  const Bounds& bounds = options.bounds;
  Verdict v;
  v.criterion = "extension";
  if (!options.base_certified) {
    Verdict b = minimal_general(base, bounds);
    if (b.status != Status::Minimal) {
      v.status = b.status;
      v.evidence = std::move(b.evidence);
      v.notes.push_back(b.status == Status::NotMinimal ? "base transformation is not minimal"
                                                       : "base minimality not certified");
      return v;
    }
  }
  const CodedSystem& sys = skew.base_coding();
  const auto scan = find_primitive_connections(sys, bounds.n_max);
  if (!scan.complete()) {
    v.evidence = ExhaustedEvidence{"connections", bounds.n_max, scan.unresolved_sources};
    v.notes.push_back("connection scan exhausted at n_max = " + std::to_string(bounds.n_max));
    return v;
  }
  const int R = R_value(sys, scan);
  const RauzyGraph g = rauzy_graph(sys, scan.M + 1);
  Word w = options.vertex.value_or(g.vertices.front());
  if (g.vertex_index(w) < 0) throw InputError("vertex " + sys.alphabet().spell(w) + " is not in G_{M+1}");

  std::vector<ReturnPath> paths;
  try {
    paths = return_paths(sys, w, bounds.return_budget);
  } catch (const ReturnBudgetExceeded&) {
    v.evidence = ExhaustedEvidence{"return_paths", static_cast<int>(std::min<long>(bounds.return_budget, INT32_MAX)), {}};
    v.notes.push_back("return-path budget exceeded");
    return v;
  }
  if (static_cast<int>(paths.size()) != R + 1) {
    throw InconsistencyError("vertex " + sys.alphabet().spell(w) + " has " + std::to_string(paths.size()) +
                             " return paths, expected R + 1 = " + std::to_string(R + 1));
  }
  const auto weights = symbol_weights(sys, spec);
  GcdWitness ev;
  ev.N = static_cast<long>(spec.modulus);
  ev.vertex = w;
  ev.alphabet = sys.alphabet();
  ev.M = scan.M;
  ev.R = R;
  std::vector<Integer> all{ev.N};
  for (const auto& p : paths) {
    Integer d = 0;
    for (Symbol s : p.label) d += weights[s];
    ev.d.push_back(d);
    ev.return_labels.push_back(p.label);
    all.push_back(d);
  }
  ev.gcd = gcd_all(all);
  v.status = gcd_status(ev.gcd);
  v.evidence = std::move(ev);
  return v;
}

// ---------------------------------------------------------------------------

std::optional<RotationContext> as_rotation(const Iet& t) {
  if (t.size() != 2 || t.permutation() != Permutation({2, 1}) || !(t.total() == FieldElement(1)))
    return std::nullopt;
  const FieldElement& alpha = t.lengths()[1];
  if (alpha.terms().size() != 1) return std::nullopt;
  return RotationContext{t.field_ptr(), alpha};
}

Verdict veechN_closed_form(const RotationContext& ctx, const FieldElement& beta, long N, bool variant) {
  const Field& f = *ctx.field;
  if (N < 1) throw InputError("N must be >= 1");
  if (beta.is_rational()) throw InputError("beta must be irrational");
  require_unit_interior(f, beta, "beta");
  Verdict v;
  v.criterion = "veech";
  if (variant) v.notes.push_back("variant: f = 1 on [beta, 1)");
  if (N == 1) {
    v.status = Status::Minimal;
    v.notes.push_back("N = 1");
    return v;
  }
  const auto z = f.in_Z_alpha(beta, ctx.alpha);
  if (!z) {
    v.status = is_prime(N) ? Status::Minimal : Status::Unknown;
    v.notes.push_back("beta is not in Z(alpha)");
    if (!is_prime(N)) v.notes.push_back("composite N: no full decision, use the extension criterion");
    return v;
  }
  const Integer m = z->first;
  const Integer n = z->second - (variant ? 1 : 0);
  LatticeEvidence ev{z->first, z->second, {}};
  for (long p : prime_factors(N)) {
    if (divides(Integer(p), m) && divides(Integer(p), n)) ev.primes.emplace_back(p);
  }
  if (is_prime(N)) {
    v.status = ev.primes.empty() ? Status::Minimal : Status::NotMinimal;
  } else if (!ev.primes.empty()) {
    v.status = Status::NotMinimal;
    v.notes.push_back("composite N: factors onto a non-minimal prime extension");
  } else {
    v.status = Status::Unknown;
    v.notes.push_back("composite N: no full decision, use the extension criterion");
  }
  v.evidence = std::move(ev);
  return v;
}

std::string to_string(CmbexForm f) {
  static const char* names[] = {"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"};
  return names[static_cast<int>(f)];
}

std::pair<long, long> cmbex_zeta(CmbexForm form, long m) {
  switch (form) {
    case CmbexForm::I:
      return {m, 0};
    case CmbexForm::II:
      return {-m, 1};
    case CmbexForm::III:
      return {m, 1 - m};
    case CmbexForm::IV:
      return {-m, m};
    case CmbexForm::V:
      return {-m, 2};
    case CmbexForm::VI:
      break;
  }
  return {m, -1};
}

namespace {

bool cmbex_preconditions(const RotationContext& ctx, CmbexForm form, long m, std::string* why) {
  const Field& f = *ctx.field;
  const FieldElement alpha = ctx.alpha;
  if (m < 1) {
    *why = "m must be >= 1";
    return false;
  }
  if (form == CmbexForm::V || form == CmbexForm::VI) {
    if (m < 2) {
      *why = "forms (v) and (vi) need m >= 2";
      return false;
    }
    if (!f.less(alpha, FieldElement(Rational(1, m - 1)))) {
      *why = "forms (v) and (vi) need alpha < 1/(m-1)";
      return false;
    }
  }
  return true;
}

}  // namespace

Verdict cmbex_closed_form(const RotationContext& ctx, CmbexForm form, long m, const FieldElement& zeta, long a1,
                          long a2, long N) {
  const Field& f = *ctx.field;
  if (N < 1) throw InputError("N must be >= 1");
  require_unit_interior(f, ctx.alpha, "alpha");
  require_unit_interior(f, zeta, "zeta_1");
  std::string why;
  if (!cmbex_preconditions(ctx, form, m, &why)) throw InputError(why);
  const auto [k, n] = cmbex_zeta(form, m);
  const auto z = f.in_Z_alpha(zeta, ctx.alpha);
  if (!z || z->first != k || z->second != n)
    throw InputError("zeta_1 = " + f.format(zeta) + " does not have form " + to_string(form) + " with m = " +
                     std::to_string(m));
  const Integer NN = N, A1 = a1, A2 = a2, M = m;
  std::vector<Integer> t;
  switch (form) {
    case CmbexForm::I:
    case CmbexForm::IV:
      t = {NN, M * A1, A2};
      break;
    case CmbexForm::II:
    case CmbexForm::III:
      t = {NN, A1, M * A2};
      break;
    case CmbexForm::V:
      t = {NN, A2 + (M - 2) * A1, M * A1};
      break;
    case CmbexForm::VI:
      t = {NN, A1 + (M - 2) * A2, M * A2};
      break;
  }
  Verdict v = tuple_verdict("rotation_q1", to_string(form), std::move(t));
  v.notes.push_back("m = " + std::to_string(m));
  return v;
}

std::optional<std::pair<CmbexForm, long>> detect_cmbex(const RotationContext& ctx, const FieldElement& zeta) {
  const auto z = ctx.field->in_Z_alpha(zeta, ctx.alpha);
  if (!z || !z->first.fits_slong_p() || !z->second.fits_slong_p()) return std::nullopt;
  const long k = z->first.get_si();
  const long n = z->second.get_si();
  for (int fi = 0; fi < 6; ++fi) {
    const auto form = static_cast<CmbexForm>(fi);
    const long m = (form == CmbexForm::I || form == CmbexForm::III || form == CmbexForm::VI) ? k : -k;
    if (m < 1) continue;
    if (cmbex_zeta(form, m) != std::pair<long, long>{k, n}) continue;
    std::string why;
    if (cmbex_preconditions(ctx, form, m, &why)) return std::pair{form, m};
  }
  return std::nullopt;
}

std::optional<Cmb3Case> detect_cmb3(const RotationContext& ctx, const FieldElement& z1, const FieldElement& z2) {
  const Field& f = *ctx.field;
  const auto p1 = f.in_Z_alpha(z1, ctx.alpha);
  const auto p2 = f.in_Z_alpha(z2, ctx.alpha);
  const auto is = [](const auto& p, long k, long n) { return p && p->first == k && p->second == n; };
  if (is(p1, 2, 0) && is(p2, 3, 0)) return Cmb3Case::TwoAndThreeAlpha;
  if (is(p1, 2, 0) && !p2) return Cmb3Case::FirstIsTwoAlpha;
  if (is(p2, 2, 0) && !p1) return Cmb3Case::SecondIsTwoAlpha;
  return std::nullopt;
}

Verdict cmb3_closed_form(const RotationContext& ctx, const FieldElement& z1, const FieldElement& z2,
                         const std::vector<long>& a, long N) {
  const Field& f = *ctx.field;
  if (N < 1) throw InputError("N must be >= 1");
  if (a.size() != 3) throw InputError("three step values expected");
  require_unit_interior(f, z1, "zeta_1");
  require_unit_interior(f, z2, "zeta_2");
  if (!f.less(z1, z2)) throw InputError("zeta_1 < zeta_2 expected");
  const auto c = detect_cmb3(ctx, z1, z2);
  if (!c) throw InputError("marked points match none of the three-value patterns");
  const Integer NN = N, A1 = a[0], A2 = a[1], A3 = a[2];
  switch (*c) {
    case Cmb3Case::FirstIsTwoAlpha:
      return tuple_verdict("rotation_q2", "zeta1=2alpha", {NN, 2 * A1, A2, A3});
    case Cmb3Case::SecondIsTwoAlpha:
      return tuple_verdict("rotation_q2", "zeta2=2alpha", {NN, A1 + A2, 2 * A2, A3});
    case Cmb3Case::TwoAndThreeAlpha:
      break;
  }
  return tuple_verdict("rotation_q2", "zeta=(2alpha,3alpha)", {NN, 2 * A1 + A2, A3});
}

Verdict idoc_closed_form(const Iet& base, const SkewSpec& spec, const Bounds& bounds, bool strict) {
  const SkewProduct skew(base, spec);  // validates
  (void)skew;
  auto points = base.discontinuities();
  points.insert(points.end(), spec.marked.begin(), spec.marked.end());
  const auto report = orbits_disjoint(base, points, bounds.n_max);
  const Field& f = base.field();

  std::vector<Integer> tuple{Integer(static_cast<long>(spec.modulus))};
  const std::size_t count = strict ? spec.values.size() - 1 : spec.values.size();
  for (std::size_t k = 0; k < count; ++k) tuple.emplace_back(static_cast<long>(spec.values[k]));
  if (!report.disjoint) {
    Verdict v;
    v.criterion = "idoc";
    const auto& c = report.witnesses.front();
    v.notes.push_back("orbit coincidence: T^-" + std::to_string(c.steps) + "(" + f.format(points[c.from]) +
                      ") = " + f.format(points[c.to]));
    TupleEvidence ev{strict ? "strict" : "lenient", tuple, gcd_all(tuple)};
    v.evidence = std::move(ev);
    return v;
  }
  Verdict v = tuple_verdict("idoc", strict ? "strict" : "lenient", std::move(tuple));
  v.notes.push_back(strict ? "gcd over a_1..a_q only (literal index range; contradicts the variant rotation case)"
                           : "gcd over all step values a_1..a_{q+1}");
  if (!report.certified) {
    v.status = Status::Unknown;
    v.evidence = ExhaustedEvidence{"orbits", bounds.n_max, {}};
    v.notes.push_back("orbit disjointness checked up to n_max = " + std::to_string(bounds.n_max) + " only");
  }
  return v;
}

// ---------------------------------------------------------------------------

std::string to_string(MerrillResult::Kind k) {
  switch (k) {
    case MerrillResult::Kind::Holds:
      return "holds";
    case MerrillResult::Kind::Fails:
      return "fails";
    case MerrillResult::Kind::Inapplicable:
      break;
  }
  return "inapplicable";
}

MerrillResult merrill_check(const RotationContext& ctx, const SkewSpec& spec, bool bounded_partial_quotients) {
  MerrillResult r;
  if (!bounded_partial_quotients) {
    r.reason = "bounded partial quotients not asserted";
    return r;
  }
  const std::size_t q = spec.marked.size();
  if (spec.values.size() != q + 1) throw InputError("a step function with q marked points needs q + 1 values");
  const long N = spec.modulus;
  for (std::size_t i = 0; i + 1 < spec.values.size(); ++i)
    r.e.emplace_back(static_cast<long>(spec.values[i + 1] - spec.values[i]));
  r.e.emplace_back(static_cast<long>(spec.values.front() - spec.values.back()));

  std::vector<FieldElement> pts{FieldElement(0)};
  pts.insert(pts.end(), spec.marked.begin(), spec.marked.end());
  pts.emplace_back(1);
  for (std::size_t i = 0; i < pts.size() && !r.off_lattice_pair; ++i)
    for (std::size_t j = i + 1; j < pts.size() && !r.off_lattice_pair; ++j)
      if (!ctx.field->in_Z_alpha(pts[j] - pts[i], ctx.alpha)) r.off_lattice_pair = true;

  r.kind = MerrillResult::Kind::Fails;
  if (std::all_of(r.e.begin(), r.e.end(), [](const Integer& x) { return x == 0; })) {
    r.failing_d = 1;
    r.reason = "all e_i vanish";
    return r;
  }
  const int terms = static_cast<int>(r.e.size());
  for (long d = 1; d < N; ++d) {
    std::optional<std::vector<int>> bad;
    for (unsigned mask = 1; mask < (1u << terms) && !bad; ++mask) {
      const int size = std::popcount(mask);
      if (size >= static_cast<int>(q)) continue;
      Integer s = 0;
      for (int i = 0; i < terms; ++i)
        if (mask & (1u << i)) s += r.e[i];
      s *= d;
      if (divides(Integer(N), s)) {
        std::vector<int> idx;
        for (int i = 0; i < terms; ++i)
          if (mask & (1u << i)) idx.push_back(i);
        bad = idx;
      }
    }
    if (!bad) {
      r.holds_for.push_back(d);
    } else if (r.failing_d == 0) {
      r.failing_d = d;
      r.witness = *bad;
    }
  }
  if (r.failing_d != 0) {
    r.reason = "a sum of fewer than q distinct d*e_i vanishes mod N";
  } else if (!r.off_lattice_pair) {
    r.reason = "every difference of marked points lies in Z(alpha)";
  } else {
    r.kind = MerrillResult::Kind::Holds;
    r.reason = "minimal and uniquely ergodic";
  }
  return r;
}

FullRamification fully_ramified(const Iet& base, const SkewSpec& spec) {
  if (spec.marked.size() != 2) throw InputError("full ramification check needs exactly two marked points");
  const SkewProduct skew(base, spec);
  FullRamification out;
  out.xi = xi(skew.lifted_coding().iet());
  out.orbit_of_zero = out.xi.orbit(0);
  out.zero_one_same_orbit =
      std::find(out.orbit_of_zero.begin(), out.orbit_of_zero.end(), 1) != out.orbit_of_zero.end();
  const Integer N = static_cast<long>(spec.modulus);
  const Integer a1 = static_cast<long>(spec.values[0]), a2 = static_cast<long>(spec.values[1]),
                a3 = static_cast<long>(spec.values[2]);
  const auto clause = [&](std::string name, const Integer& value) {
    RamificationClause c{std::move(name), value, gcd_all({value, N}), false};
    c.holds = c.gcd == 1;
    out.clauses.push_back(c);
  };
  clause("a1-a2", a1 - a2);
  clause("a2-a3", a2 - a3);
  clause("|O(0)|", Integer(static_cast<long>(out.orbit_of_zero.size())));
  if (out.zero_one_same_orbit) {
    clause("a3-a1", a3 - a1);
  } else {
    clause("a1", a1);
  }
  out.fully_ramified =
      std::all_of(out.clauses.begin(), out.clauses.end(), [](const RamificationClause& c) { return c.holds; });
  return out;
}

UeAdvisory ue_advisory(const UeInputs& in) {
  UeAdvisory a{"no_conclusion", false, ""};
  if (in.minimality != Status::Minimal) {
    a.premise = in.minimality == Status::NotMinimal ? "not minimal, hence not uniquely ergodic"
                                                    : "minimality not certified";
    return a;
  }
  if (!in.recurrence_constant) {
    a.premise = "no linear-recurrence evidence";
    return a;
  }
  std::ostringstream premise;
  premise << "linear recurrence estimated empirically (K ~ " << *in.recurrence_constant << ")";
  if (in.q == 2 && in.fully_ramified.value_or(false)) {
    a = {"uniquely_ergodic_q2", true, premise.str() + "; fully ramified; minimal"};
  } else if (in.q == 1) {
    a = {"uniquely_ergodic_q1", true, premise.str() + "; minimal"};
  } else {
    a.premise = in.q == 2 ? "not fully ramified" : "no criterion for q = " + std::to_string(in.q);
  }
  return a;
}

// ---------------------------------------------------------------------------

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

CirculantResult circulant_kernel_check(const CirculantInstance& inst) {
  const int N = inst.N;
  if (!is_prime(N)) throw InputError("circulant check needs a prime N");
  if (static_cast<int>(inst.epsilons.size()) != N) throw InputError("expected N entries");
  int sum = 0;
  bool nonzero = false;
  for (int e : inst.epsilons) {
    if (e < -1 || e > 1) throw InputError("entries must be in {-1, 0, 1}");
    sum += e;
    nonzero = nonzero || e != 0;
  }
  if (sum != 0) throw InputError("entries must sum to zero");
  if (!nonzero) throw InputError("the zero vector is not admissible");

  std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N));
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i) a[k][i] = inst.epsilons[((i - k) % N + N) % N];
  int rank = 0;
  for (int col = 0; col < N && rank < N; ++col) {
    int pivot = -1;
    for (int r = rank; r < N; ++r)
      if (sgn(a[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    for (int r = 0; r < N; ++r) {
      if (r == rank || sgn(a[r][col]) == 0) continue;
      const Rational factor = a[r][col] / a[rank][col];
      for (int c = col; c < N; ++c) a[r][c] -= factor * a[rank][c];
    }
    ++rank;
  }
  return {rank, N - rank};
}

std::vector<CirculantInstance> admissible_circulants(int N) {
  if (N < 1 || N > 15) throw InputError("exhaustive enumeration is capped at N <= 15");
  std::vector<CirculantInstance> out;
  std::vector<int> e(N, -1);
  while (true) {
    int sum = 0;
    bool nonzero = false;
    for (int x : e) {
      sum += x;
      nonzero = nonzero || x != 0;
    }
    if (sum == 0 && nonzero) out.push_back({N, e});
    int k = 0;
    while (k < N && e[k] == 1) e[k++] = -1;
    if (k == N) break;
    ++e[k];
  }
  return out;
}

// ---------------------------------------------------------------------------

SurdSpec surd_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw InputError("surd_between: empty range");
  // lo + (hi - lo) * (sqrt(2) - 1)
  const Rational c0 = 2 * lo - hi, c1 = hi - lo;
  Integer r;
  mpz_lcm(r.get_mpz_t(), c0.get_den_mpz_t(), c1.get_den_mpz_t());
  const Rational p = c0 * r, q = c1 * r;
  return {p.get_num(), q.get_num(), r, 2};
}

namespace {

// alpha in (0,1) with 0 < m*alpha + n < 1.
std::optional<std::pair<Rational, Rational>> alpha_range(long m, long n) {
  if (m == 0) return std::nullopt;
  Rational lo(-n, m), hi(1 - n, m);
  lo.canonicalize();
  hi.canonicalize();
  if (m < 0) std::swap(lo, hi);
  lo = std::max(lo, Rational(0));
  hi = std::min(hi, Rational(1));
  if (!(lo < hi)) return std::nullopt;
  return std::pair{lo, hi};
}

std::optional<Status> predict(ConjectureTarget target, const ConjectureInstance& in, std::string* rule) {
  const Integer N = in.N, m = in.m, n = in.n, a1 = in.a1, a2 = in.a2;
  switch (target) {
    case ConjectureTarget::Cpa: {
      Integer shift;
      if (in.a1 == 1 && in.a2 == 0) {
        shift = 0;
        *rule = "(N,m,n)";
      } else if (in.a1 == 0 && in.a2 == 1) {
        shift = 1;
        *rule = "(N,m,n-1)";
      } else {
        return std::nullopt;
      }
      return gcd_all({N, m, n - shift}) != 1 ? Status::NotMinimal : Status::Minimal;
    }
    case ConjectureTarget::Conj2: {
      const long np = -in.n;  // zeta = m*alpha - n'
      if (np < 1 || (in.m - 1) % np != 0 || (in.m - 1) / np < 1) return std::nullopt;
      const Integer mbar = (in.m - 1) / np;
      *rule = "(N, a1+(mbar-1)a2, m a2)";
      return gcd_status(gcd_all({N, a1 + (mbar - 1) * a2, m * a2}));
    }
    case ConjectureTarget::Remark:
      if (in.n == -2 && (in.m == 2 || in.m == 4)) {
        *rule = "(N,2a1,a2)";
        return gcd_status(gcd_all({N, 2 * a1, a2}));
      }
      if (in.n == -2 && in.m == 6) {
        *rule = "(N,2a1,3a2)";
        return gcd_status(gcd_all({N, 2 * a1, 3 * a2}));
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<ConjectureInstance> conjecture_grid(ConjectureTarget target, int size) {
  if (size < 1) throw InputError("grid size must be >= 1");
  std::vector<ConjectureInstance> out;
  const auto push_all_a = [&](long m, long n, long N) {
    const auto range = alpha_range(m, n);
    if (!range) return;
    const SurdSpec s = surd_between(range->first, range->second);
    for (long a1 = 0; a1 < N; ++a1)
      for (long a2 = 0; a2 < N; ++a2) out.push_back({m, n, N, a1, a2, s});
  };
  switch (target) {
    case ConjectureTarget::Cpa:
      for (long N = 2; N <= size + 1; ++N)
        for (long m = -size; m <= size; ++m)
          for (long n = -size; n <= size; ++n) {
            const auto range = alpha_range(m, n);
            if (!range) continue;
            const SurdSpec s = surd_between(range->first, range->second);
            out.push_back({m, n, N, 1, 0, s});
            out.push_back({m, n, N, 0, 1, s});
          }
      break;
    case ConjectureTarget::Conj2:
      for (long N = 2; N <= size + 1; ++N)
        for (long np = 1; np <= size; ++np)
          for (long mbar = 1; mbar <= size; ++mbar) push_all_a(mbar * np + 1, -np, N);
      break;
    case ConjectureTarget::Remark:
      // 2*alpha - 2 never lies in (0, 1) for alpha in (0, 1).
      for (long N = 2; N <= size + 1; ++N)
        for (long m : {4L, 6L}) push_all_a(m, -2, N);
      break;
  }
  return out;
}

std::vector<ConjectureRow> conjecture_probe(ConjectureTarget target, const std::vector<ConjectureInstance>& grid,
                                            const Bounds& bounds) {
  std::vector<ConjectureRow> rows;
  for (const auto& in : grid) {
    ConjectureRow row;
    row.instance = in;
    row.predicted = predict(target, in, &row.rule);
    auto field = Field::make({{"alpha", in.alpha}});
    const FieldElement alpha = field->gen("alpha");
    const Iet rot = Iet::rotation(field, alpha);
    const FieldElement zeta = alpha * Rational(in.m) + FieldElement(in.n);
    ExtensionOptions opts;
    opts.bounds = bounds;
    row.observed = minimal_extension(rot, {{zeta}, {in.a1, in.a2}, in.N}, opts).status;
    if (!row.predicted || row.observed == Status::Unknown) {
      row.agreement = "n/a";
    } else {
      row.agreement = *row.predicted == row.observed ? "agree" : "disagree";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ietlab
