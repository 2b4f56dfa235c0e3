// Command line front end: analyze, graph, extend, closed-form, probe,
// lemma-check, conjecture.

#include <CLI11.hpp>
#include <iostream>

#include "ietlab/session.hpp"

using namespace ietlab;

namespace {

struct Common {
  std::string config;
  std::optional<int> n_max, p_max;
  std::optional<long> return_budget;
  bool pmn_strict = false;
  bool merge = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "session config (JSON)")->required();
  cmd->add_option("--n-max", c.n_max, "connection / orbit scan bound");
  cmd->add_option("--p-max", c.p_max, "periodic search bound");
  cmd->add_option("--return-budget", c.return_budget, "return-path work budget");
  cmd->add_flag("--pmn-strict", c.pmn_strict, "gcd over a_1..a_q only in the i.d.o.c. closed form");
  cmd->add_flag("--merge", c.merge, "merge adjacent intervals of the skew IET");
}

Session open_session(const Common& c) {
  SessionConfig cfg = load_config(c.config);
  if (c.n_max) cfg.bounds.n_max = *c.n_max;
  if (c.p_max) cfg.bounds.p_max = *c.p_max;
  if (c.return_budget) cfg.bounds.return_budget = *c.return_budget;
  cfg.flags.pmn_strict = cfg.flags.pmn_strict || c.pmn_strict;
  cfg.flags.merge = cfg.flags.merge || c.merge;
  return build_session(cfg);
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

ConjectureTarget parse_target(const std::string& t) {
  if (t == "cpa") return ConjectureTarget::Cpa;
  if (t == "conj2") return ConjectureTarget::Conj2;
  if (t == "remark") return ConjectureTarget::Remark;
  throw InputError("unknown conjecture target " + t);
}

int grid_size(const std::string& g) {
  if (g == "small") return 2;
  if (g == "medium") return 3;
  if (g == "large") return 4;
  try {
    return std::stoi(g);
  } catch (const std::logic_error&) {
    throw InputError("grid must be small, medium, large or an integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimality of interval exchanges and their cyclic skew products"};
  app.require_subcommand(1);

  Common analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "run every applicable criterion and cross-check them");
  add_common(analyze_cmd, analyze_opts);

  Common graph_opts;
  int length = 1;
  bool dot = false, json = false, lifted = false;
  auto* graph_cmd = app.add_subcommand("graph", "emit the Rauzy graph G_n");
  add_common(graph_cmd, graph_opts);
  graph_cmd->add_option("--length,-n", length, "word length n")->check(CLI::PositiveNumber);
  graph_cmd->add_flag("--dot", dot, "DOT output (default)");
  graph_cmd->add_flag("--json", json, "JSON output");
  graph_cmd->add_flag("--lifted", lifted, "graph of the skew product instead of the marked base");

  Common extend_opts;
  auto* extend_cmd = app.add_subcommand("extend", "dump the skew-product interval exchange");
  add_common(extend_cmd, extend_opts);

  Common closed_opts;
  auto* closed_cmd = app.add_subcommand("closed-form", "closed-form criteria only");
  add_common(closed_cmd, closed_opts);

  Common probe_opts;
  BirkhoffOptions bo;
  bool probe_lifted = false, csv = false;
  std::optional<int> recurrence;
  long window = 100'000;
  auto* probe_cmd = app.add_subcommand("probe", "empirical frequency and recurrence probes");
  add_common(probe_cmd, probe_opts);
  probe_cmd->add_option("--starts", bo.starts, "number of random starting points");
  probe_cmd->add_option("--iterations", bo.iterations, "Birkhoff iterations per start");
  probe_cmd->add_option("--word-length", bo.word_length, "cylinder word length");
  probe_cmd->add_option("--seed", bo.seed, "RNG seed");
  probe_cmd->add_flag("--lifted", probe_lifted, "probe the skew product");
  probe_cmd->add_flag("--csv", csv, "CSV table instead of JSON");
  probe_cmd->add_option("--recurrence", recurrence, "also estimate linear recurrence up to this word length");
  probe_cmd->add_option("--window", window, "orbit length for the recurrence estimate");

  int circulant = 0, cap = 11;
  auto* lemma_cmd = app.add_subcommand("lemma-check", "exhaustive circulant kernel check");
  lemma_cmd->add_option("--circulant", circulant, "prime N")->required();
  lemma_cmd->add_option("--cap", cap, "largest N for exhaustive mode");

  std::string target, grid = "small";
  int n_max_conj = 4096;
  auto* conj_cmd = app.add_subcommand("conjecture", "compare conjectured criteria with the extension criterion");
  conj_cmd->add_option("--target", target, "cpa, conj2 or remark")->required();
  conj_cmd->add_option("--grid", grid, "small, medium, large or a size");
  conj_cmd->add_option("--n-max", n_max_conj, "connection scan bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze_cmd) {
      const Analysis a = analyze(open_session(analyze_opts));
      print(a.document);
      return a.exit_code;
    }
    if (*graph_cmd) {
      const Session s = open_session(graph_opts);
      std::optional<SkewProduct> skew;
      std::optional<CodedSystem> sys;
      if (lifted) {
        if (!s.skew) throw InputError("--lifted needs a skew section");
        skew.emplace(s.base, *s.skew, SkewOptions{s.config.flags.merge, SheetLayout::Reflected});
        sys.emplace(s.config.flags.merge ? CodedSystem(skew->iet()) : skew->lifted_coding());
      } else {
        sys.emplace(s.skew ? CodedSystem::refine(s.base, s.skew->marked) : CodedSystem(s.base));
      }
      const RauzyGraph g = rauzy_graph(*sys, length);
      if (json && !dot) {
        Json j = to_json(g, sys->alphabet());
        j["schema"] = kSchema;
        print(j);
      } else {
        std::cout << to_dot(g, sys->alphabet());
      }
      return kDecided;
    }
    if (*extend_cmd) {
      print(describe_extension(open_session(extend_opts)));
      return kDecided;
    }
    if (*closed_cmd) {
      const Session s = open_session(closed_opts);
      const Json forms = closed_forms(s);
      int code = kDecided;
      bool any = false;
      for (const auto& f : forms) any = any || f["applicable"].get<bool>();
      if (!any) code = kUndecided;
      print({{"schema", kSchema}, {"closed_forms", forms}});
      return code;
    }
    if (*probe_cmd) {
      const Session s = open_session(probe_opts);
      std::optional<SkewProduct> skew;
      std::optional<CodedSystem> sys;
      if (probe_lifted) {
        if (!s.skew) throw InputError("--lifted needs a skew section");
        skew.emplace(s.base, *s.skew);
        sys.emplace(skew->lifted_coding());
      } else {
        sys.emplace(s.skew ? CodedSystem::refine(s.base, s.skew->marked) : CodedSystem(s.base));
      }
      const FrequencyReport fr = birkhoff_frequencies(*sys, bo);
      if (csv) {
        std::cout << to_csv(fr);
        if (recurrence) std::cout << '\n' << to_csv(linear_recurrence_estimate(*sys, *recurrence, window));
        return kDecided;
      }
      Json j{{"schema", kSchema}, {"frequencies", to_json(fr)}};
      if (recurrence) {
        const RecurrenceReport rr = linear_recurrence_estimate(*sys, *recurrence, window);
        j["recurrence"] = to_json(rr);
        if (s.skew) {
          UeInputs in;
          ExtensionOptions eo;
          eo.bounds = s.config.bounds;
          in.minimality = minimal_extension(s.base, *s.skew, eo).status;
          in.q = static_cast<int>(s.skew->marked.size());
          if (in.q == 2) in.fully_ramified = fully_ramified(s.base, *s.skew).fully_ramified;
          // The recurrence estimate is taken on the marked base coding.
          const CodedSystem base = CodedSystem::refine(s.base, s.skew->marked);
          in.recurrence_constant = linear_recurrence_estimate(base, *recurrence, window).estimate();
          j["ue_advisory"] = to_json(ue_advisory(in));
        }
      }
      print(j);
      return kDecided;
    }
    if (*lemma_cmd) {
      if (!is_prime(circulant)) throw InputError("--circulant needs a prime N");
      if (circulant > cap) throw InputError("N exceeds the exhaustive cap " + std::to_string(cap));
      const auto all = admissible_circulants(circulant);
      long bad = 0;
      Json counter = Json::array();
      for (const auto& inst : all) {
        const auto r = circulant_kernel_check(inst);
        if (r.kernel_dimension != 1) {
          ++bad;
          counter.push_back(inst.epsilons);
        }
      }
      print({{"schema", kSchema},
             {"N", circulant},
             {"instances", all.size()},
             {"kernel_dimension_one", all.size() - bad},
             {"counterexamples", counter}});
      return bad == 0 ? kDecided : kInconsistent;
    }
    if (*conj_cmd) {
      const ConjectureTarget t = parse_target(target);
      Bounds b;
      b.n_max = n_max_conj;
      const auto rows = conjecture_probe(t, conjecture_grid(t, grid_size(grid)), b);
      Json table = Json::array();
      long agree = 0, disagree = 0, na = 0;
      for (const auto& r : rows) {
        const auto& in = r.instance;
        table.push_back({{"m", in.m},
                         {"n", in.n},
                         {"N", in.N},
                         {"a", {in.a1, in.a2}},
                         {"rule", r.rule},
                         {"predicted", r.predicted ? to_string(*r.predicted) : "none"},
                         {"observed", to_string(r.observed)},
                         {"agreement", r.agreement}});
        (r.agreement == "agree" ? agree : r.agreement == "disagree" ? disagree : na)++;
      }
      print({{"schema", kSchema},
             {"target", target},
             {"rows", table},
             {"summary", {{"agree", agree}, {"disagree", disagree}, {"n/a", na}}}});
      return kDecided;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const RefinementBudgetExceeded& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return kUndecided;
  }
  return kDecided;
}
