#include "ietlab/session.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ietlab {

namespace {

Integer integer_of(const Json& j, const char* what) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw InputError(std::string("expected an integer for ") + what);
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) throw InputError(std::string(where) + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InputError("unknown key \"" + k + "\" in " + where);
  }
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("malformed value for ") + what);
  }
}

GeneratorSpec parse_generator(const Json& g) {
  check_keys(g, {"name", "surd", "cf"}, "generator");
  GeneratorSpec out;
  out.name = get_as<std::string>(g.at("name"), "generator name");
  if (g.contains("surd") == g.contains("cf")) throw InputError("generator " + out.name + ": give exactly one of surd, cf");
  if (g.contains("surd")) {
    const Json& s = g["surd"];
    check_keys(s, {"p", "q", "r", "d"}, "surd");
    out.source = SurdSpec{integer_of(s.value("p", Json(0)), "p"), integer_of(s.value("q", Json(1)), "q"),
                          integer_of(s.value("r", Json(1)), "r"), integer_of(s.at("d"), "d")};
    return out;
  }
  const Json& cf = g["cf"];
  if (!cf.is_array() || cf.empty()) throw InputError("cf must be a non-empty array");
  ContinuedFractionSpec spec;
  for (std::size_t k = 0; k < cf.size(); ++k) {
    const bool last = k + 1 == cf.size();
    if (last && cf[k].is_array()) {
      for (const auto& t : cf[k]) spec.period.push_back(integer_of(t, "cf period term"));
      if (spec.period.empty()) throw InputError("cf period must be non-empty");
    } else if (last && cf[k].is_string() && cf[k].get<std::string>() == "...") {
      if (spec.prefix.empty()) throw InputError("\"...\" needs a term to repeat");
      spec.period.push_back(spec.prefix.back());
      spec.prefix.pop_back();
    } else {
      spec.prefix.push_back(integer_of(cf[k], "cf term"));
    }
  }
  out.source = std::move(spec);
  return out;
}

void apply_bounds(const Json& b, Bounds& out) {
  check_keys(b, {"n_max", "p_max", "return_budget"}, "bounds");
  if (b.contains("n_max")) out.n_max = get_as<int>(b["n_max"], "n_max");
  if (b.contains("p_max")) out.p_max = get_as<int>(b["p_max"], "p_max");
  if (b.contains("return_budget")) out.return_budget = get_as<long>(b["return_budget"], "return_budget");
  if (out.n_max < 0 || out.p_max < 1 || out.return_budget < 1) throw InputError("bounds out of range");
}

}  // namespace

Bounds default_bounds() {
  Bounds b;
  const char* env = std::getenv("IETLAB_BOUNDS");
  if (!env || !*env) return b;
  std::stringstream ss(env);
  std::string item;
  Json j = Json::object();
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("IETLAB_BOUNDS: expected key=value, got \"" + item + "\"");
    try {
      j[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw InputError("IETLAB_BOUNDS: bad number in \"" + item + "\"");
    }
  }
  apply_bounds(j, b);
  return b;
}

SessionConfig parse_config(const Json& doc, const Bounds& defaults) {
  check_keys(doc, {"generators", "iet", "skew", "bounds", "flags"}, "config");
  SessionConfig c;
  if (doc.contains("generators")) {
    if (!doc["generators"].is_array()) throw InputError("generators must be an array");
    for (const auto& g : doc["generators"]) c.generators.push_back(parse_generator(g));
  }
  if (!doc.contains("iet")) throw InputError("config needs an \"iet\" section");
  const Json& iet = doc["iet"];
  check_keys(iet, {"lengths", "permutation"}, "iet");
  c.lengths = get_as<std::vector<std::string>>(iet.at("lengths"), "iet.lengths");
  c.permutation = get_as<std::vector<int>>(iet.at("permutation"), "iet.permutation");
  if (doc.contains("skew")) {
    const Json& s = doc["skew"];
    check_keys(s, {"marked", "values", "modulus"}, "skew");
    SkewConfig k;
    k.marked = get_as<std::vector<std::string>>(s.value("marked", Json::array()), "skew.marked");
    k.values = get_as<std::vector<std::int64_t>>(s.at("values"), "skew.values");
    k.modulus = get_as<std::int64_t>(s.at("modulus"), "skew.modulus");
    c.skew = std::move(k);
  }
  c.bounds = defaults;
  if (doc.contains("bounds")) apply_bounds(doc["bounds"], c.bounds);
  if (doc.contains("flags")) {
    const Json& f = doc["flags"];
    check_keys(f, {"pmn_strict", "merge", "bpq"}, "flags");
    c.flags.pmn_strict = get_as<bool>(f.value("pmn_strict", Json(false)), "pmn_strict");
    c.flags.merge = get_as<bool>(f.value("merge", Json(false)), "merge");
    c.flags.bpq = get_as<bool>(f.value("bpq", Json(false)), "bpq");
  }
  return c;
}

SessionConfig load_config(const std::string& path, const Bounds& defaults) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, defaults);
}

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json to_json(const SessionConfig& c) {
  Json doc = Json::object();
  Json gens = Json::array();
  for (const auto& g : c.generators) {
    Json j{{"name", g.name}};
    if (const auto* s = std::get_if<SurdSpec>(&g.source)) {
      j["surd"] = {{"p", to_json(s->p)}, {"q", to_json(s->q)}, {"r", to_json(s->r)}, {"d", to_json(s->d)}};
    } else {
      const auto& cf = std::get<ContinuedFractionSpec>(g.source);
      Json terms = Json::array();
      for (const auto& t : cf.prefix) terms.push_back(to_json(t));
      if (!cf.period.empty()) {
        Json period = Json::array();
        for (const auto& t : cf.period) period.push_back(to_json(t));
        terms.push_back(period);
      }
      j["cf"] = terms;
    }
    gens.push_back(j);
  }
  doc["generators"] = gens;
  doc["iet"] = {{"lengths", c.lengths}, {"permutation", c.permutation}};
  if (c.skew) doc["skew"] = {{"marked", c.skew->marked}, {"values", c.skew->values}, {"modulus", c.skew->modulus}};
  doc["bounds"] = {{"n_max", c.bounds.n_max}, {"p_max", c.bounds.p_max}, {"return_budget", c.bounds.return_budget}};
  doc["flags"] = {{"pmn_strict", c.flags.pmn_strict}, {"merge", c.flags.merge}, {"bpq", c.flags.bpq}};
  return doc;
}

Session build_session(const SessionConfig& config) {
  auto field = Field::make(config.generators);
  std::vector<FieldElement> lengths;
  for (const auto& e : config.lengths) lengths.push_back(field->parse(e));
  Iet base(field, std::move(lengths), Permutation(config.permutation));
  std::optional<SkewSpec> skew;
  if (config.skew) {
    SkewSpec s;
    for (const auto& e : config.skew->marked) s.marked.push_back(field->parse(e));
    s.values = config.skew->values;
    s.modulus = config.skew->modulus;
    SkewProduct check(base, s);  // validation only
    (void)check;
    skew = std::move(s);
  }
  return Session{config, field, std::move(base), std::move(skew)};
}

// ---------------------------------------------------------------------------

Json to_json(const Field& f, const FieldElement& x) { return {{"expr", f.format(x)}, {"approx", f.to_double(x)}}; }

namespace {

Json integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

Json spelled(const Alphabet& a, const std::vector<Word>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(a.spell(w));
  return out;
}

}  // namespace

Json to_json(const Field& f, const Verdict& v) {
  Json j{{"status", to_string(v.status)}, {"criterion", v.criterion}, {"notes", v.notes}};
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, PeriodicEvidence>) {
          j["evidence"] = "periodic_interval";
          j["period"] = ev.period;
          j["interval"] = {to_json(f, ev.interval.lo), to_json(f, ev.interval.hi)};
        } else if constexpr (std::is_same_v<T, ComponentEvidence>) {
          j["evidence"] = "components";
          j["order"] = ev.graph.order;
          Json comps = Json::array();
          for (const auto& c : ev.components) {
            std::vector<std::string> names;
            for (int x : c) names.push_back(ev.alphabet.spell(ev.graph.vertices[x]));
            std::sort(names.begin(), names.end());
            comps.push_back(names);
          }
          j["components"] = comps;
        } else if constexpr (std::is_same_v<T, GcdWitness>) {
          j["evidence"] = "gcd_witness";
          j["N"] = to_json(ev.N);
          j["d"] = integers(ev.d);
          j["gcd"] = to_json(ev.gcd);
          j["vertex"] = ev.alphabet.spell(ev.vertex);
          j["return_labels"] = spelled(ev.alphabet, ev.return_labels);
          j["M"] = ev.M;
          j["R"] = ev.R;
        } else if constexpr (std::is_same_v<T, TupleEvidence>) {
          j["evidence"] = "gcd_tuple";
          j["form"] = ev.form;
          j["tuple"] = integers(ev.tuple);
          j["gcd"] = to_json(ev.gcd);
        } else if constexpr (std::is_same_v<T, LatticeEvidence>) {
          j["evidence"] = "lattice";
          j["m"] = to_json(ev.m);
          j["n"] = to_json(ev.n);
          j["primes"] = integers(ev.primes);
        } else if constexpr (std::is_same_v<T, ExhaustedEvidence>) {
          j["evidence"] = "exhausted_bound";
          j["what"] = ev.what;
          j["bound"] = ev.bound;
          Json u = Json::array();
          for (const auto& x : ev.unresolved) u.push_back(to_json(f, x));
          j["unresolved"] = u;
        } else {
          j["evidence"] = nullptr;
        }
      },
      v.evidence);
  return j;
}

Json to_json(const RauzyGraph& g, const Alphabet& a) {
  std::vector<std::string> vertices;
  for (const auto& v : g.vertices) vertices.push_back(a.spell(v));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : g.edges) edges.emplace_back(a.spell(e.label), vertices[e.from], vertices[e.to]);
  std::sort(edges.begin(), edges.end());
  Json je = Json::array();
  for (const auto& [label, from, to] : edges) je.push_back({{"from", from}, {"to", to}, {"label", label}});
  std::sort(vertices.begin(), vertices.end());
  const auto conn = connected_undirected(g);
  return {{"order", g.order}, {"vertices", vertices}, {"edges", je}, {"components", conn.components.size()}};
}

Json to_json(const FullRamification& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses)
    clauses.push_back({{"name", c.name}, {"value", to_json(c.value)}, {"gcd", to_json(c.gcd)}, {"holds", c.holds}});
  return {{"fully_ramified", r.fully_ramified},
          {"xi", r.xi.images},
          {"orbit_of_zero", r.orbit_of_zero},
          {"zero_one_same_orbit", r.zero_one_same_orbit},
          {"clauses", clauses}};
}

Json to_json(const MerrillResult& r) {
  return {{"result", to_string(r.kind)}, {"e", integers(r.e)},          {"holds_for", r.holds_for},
          {"failing_d", r.failing_d},    {"witness", r.witness},        {"off_lattice_pair", r.off_lattice_pair},
          {"reason", r.reason}};
}

Json to_json(const UeAdvisory& a) {
  return {{"tag", a.tag}, {"conditional", a.conditional}, {"premise", a.premise}, {"empirical", true}};
}

Json to_json(const FrequencyReport& r) {
  return {{"empirical", true},         {"words", r.words},           {"start_points", r.start_points},
          {"frequencies", r.frequencies}, {"rejected", r.rejected},  {"dispersion", r.dispersion},
          {"iterations", r.iterations}, {"word_length", r.word_length}, {"seed", r.seed}};
}

Json to_json(const RecurrenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"max_gap", row.max_gap},
                    {"ratio", row.ratio},
                    {"worst_word", row.worst_word},
                    {"not_recurring", row.not_recurring}});
  return {{"empirical", true}, {"window", r.window}, {"rows", rows}, {"estimate", r.estimate()}};
}

// ---------------------------------------------------------------------------

namespace {

struct ClosedForm {
  explicit ClosedForm(std::string n) : name(std::move(n)) {}
  std::string name;
  bool applicable = false;
  bool cross_checked = true;
  std::string reason;
  std::optional<Verdict> verdict;
};

std::vector<ClosedForm> run_closed_forms(const Session& s) {
  std::vector<ClosedForm> out;
  if (!s.skew) return out;
  const SkewSpec& sk = *s.skew;
  const Field& f = *s.field;
  const auto rot = as_rotation(s.base);
  const std::size_t q = sk.marked.size();

  if (rot && q == 1) {
    ClosedForm veech{"veech"};
    const bool plain = sk.values == std::vector<std::int64_t>{1, 0};
    const bool variant = sk.values == std::vector<std::int64_t>{0, 1};
    if ((plain || variant) && !sk.marked[0].is_rational()) {
      veech.verdict = veechN_closed_form(*rot, sk.marked[0], sk.modulus, variant);
      veech.applicable = veech.verdict->status != Status::Unknown;
      if (!veech.applicable) veech.reason = "composite modulus without a failing prime";
    } else {
      veech.reason = "needs values (1,0) or (0,1) and an irrational marked point";
    }
    out.push_back(std::move(veech));

    ClosedForm cmbex{"cmbex"};
    if (const auto form = detect_cmbex(*rot, sk.marked[0])) {
      cmbex.verdict = cmbex_closed_form(*rot, form->first, form->second, sk.marked[0], sk.values[0], sk.values[1],
                                        sk.modulus);
      cmbex.applicable = true;
    } else {
      cmbex.reason = "marked point matches none of the forms (i)-(vi)";
    }
    out.push_back(std::move(cmbex));
  }
  if (rot && q == 2) {
    ClosedForm cmb3{"cmb3"};
    if (detect_cmb3(*rot, sk.marked[0], sk.marked[1])) {
      cmb3.verdict = cmb3_closed_form(*rot, sk.marked[0], sk.marked[1],
                                      {static_cast<long>(sk.values[0]), static_cast<long>(sk.values[1]),
                                       static_cast<long>(sk.values[2])},
                                      sk.modulus);
      cmb3.applicable = true;
    } else {
      cmb3.reason = "marked points match none of the three-value patterns";
    }
    out.push_back(std::move(cmb3));
  }
  ClosedForm idoc{"idoc"};
  idoc.verdict = idoc_closed_form(s.base, sk, s.config.bounds, s.config.flags.pmn_strict);
  idoc.applicable = idoc.verdict->status != Status::Unknown;
  idoc.cross_checked = !s.config.flags.pmn_strict;
  if (!idoc.applicable) {
    idoc.reason = std::holds_alternative<ExhaustedEvidence>(idoc.verdict->evidence)
                      ? "disjointness of the cut orbits is not certified"
                      : "the cut orbits meet, so the hypothesis fails";
  }
  (void)f;
  out.push_back(std::move(idoc));
  return out;
}

Json closed_forms_json(const Session& s, const std::vector<ClosedForm>& forms) {
  Json a = Json::array();
  for (const auto& c : forms) {
    Json j{{"name", c.name}, {"applicable", c.applicable}, {"cross_checked", c.cross_checked && c.applicable}};
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (c.verdict) j["verdict"] = to_json(*s.field, *c.verdict);
    a.push_back(j);
  }
  return a;
}

CodedSystem extension_coding(const Session& s, const SkewProduct& skew) {
  if (s.config.flags.merge) return CodedSystem(skew.iet());
  return skew.lifted_coding();
}

}  // namespace

Json closed_forms(const Session& s) { return closed_forms_json(s, run_closed_forms(s)); }

Json describe_extension(const Session& s) {
  if (!s.skew) throw InputError("config has no skew section");
  const SkewOptions opts{s.config.flags.merge, SheetLayout::Reflected};
  const SkewProduct skew(s.base, *s.skew, opts);
  const Iet& t = skew.iet();
  const Field& f = *s.field;
  Json lengths = Json::array();
  for (const auto& l : t.lengths()) lengths.push_back(to_json(f, l));
  Json j{{"schema", kSchema},
         {"intervals", t.size()},
         {"premerge_count", skew.premerge_count()},
         {"merged", s.config.flags.merge},
         {"lengths", lengths},
         {"permutation", t.permutation().images()},
         {"xi", xi(t).images}};
  if (!s.config.flags.merge) j["symbols"] = skew.lifted_coding().alphabet().names();
  Json cycles = Json::array();
  for (const auto& c : xi(t).cycles()) cycles.push_back(c);
  j["xi_cycles"] = cycles;
  Json weights = Json::array();
  for (const auto& w : skew.symbol_values()) weights.push_back(w);
  j["base_symbols"] = skew.base_coding().alphabet().names();
  j["base_symbol_values"] = weights;
  return j;
}

Analysis analyze(const Session& s) {
  const Field& f = *s.field;
  const Bounds& bounds = s.config.bounds;
  Analysis a;
  Json& doc = a.document;
  doc["schema"] = kSchema;
  doc["input"] = to_json(s.config);
  if (auto w = f.independence_warning()) doc["warnings"] = Json::array({*w});

  std::vector<Status> undecided_pool;
  const Verdict base = minimal_general(s.base, bounds);
  doc["base"] = to_json(f, base);
  undecided_pool.push_back(base.status);

  if (!s.skew) {
    doc["cross_check"] = "n/a";
  } else {
    const SkewOptions opts{s.config.flags.merge, SheetLayout::Reflected};
    const SkewProduct skew(s.base, *s.skew, opts);
    std::vector<std::pair<std::string, Status>> deciders;
    const Verdict general = minimal_general(extension_coding(s, skew), bounds);
    deciders.emplace_back("extension.general", general.status);
    Json ext{{"intervals", skew.iet().size()}, {"general", to_json(f, general)}};
    try {
      ExtensionOptions eo;
      eo.bounds = bounds;
      const Verdict gcd = minimal_extension(s.base, *s.skew, eo);
      ext["gcd"] = to_json(f, gcd);
      deciders.emplace_back("extension.gcd", gcd.status);
    } catch (const InconsistencyError& e) {
      ext["gcd"] = {{"status", "error"}, {"error", e.what()}};
      a.exit_code = kInconsistent;
    }
    doc["extension"] = ext;

    const auto forms = run_closed_forms(s);
    doc["closed_forms"] = closed_forms_json(s, forms);
    for (const auto& c : forms)
      if (c.applicable && c.cross_checked) deciders.emplace_back(c.name, c.verdict->status);

    if (s.skew->marked.size() == 2) doc["ramification"] = to_json(fully_ramified(s.base, *s.skew));
    if (s.config.flags.bpq) {
      if (const auto rot = as_rotation(s.base)) doc["merrill"] = to_json(merrill_check(*rot, *s.skew, true));
    }

    std::optional<Status> decided;
    bool disagree = false, partial = false;
    Json table = Json::object();
    for (const auto& [name, st] : deciders) {
      table[name] = to_string(st);
      undecided_pool.push_back(st);
      if (st == Status::Unknown) {
        partial = true;
      } else if (!decided) {
        decided = st;
      } else if (*decided != st) {
        disagree = true;
      }
    }
    doc["cross_check"] = disagree ? "disagree" : partial ? "partial" : "agree";
    doc["deciders"] = table;
    if (disagree) a.exit_code = kInconsistent;
  }
  if (a.exit_code == kDecided) {
    for (Status st : undecided_pool)
      if (st == Status::Unknown) a.exit_code = kUndecided;
  }
  doc["exit_code"] = a.exit_code;
  return a;
}

}  // namespace ietlab
