#pragma once

// Session configuration (JSON), verdict rendering and the analysis pipeline
// behind the command line tool.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/criteria.hpp"
#include "ietlab/probes.hpp"

namespace ietlab {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "iet-lab/1";

struct SkewConfig {
  std::vector<std::string> marked;  // field expressions
  std::vector<std::int64_t> values;
  std::int64_t modulus = 1;
};

struct Flags {
  bool pmn_strict = false;
  bool merge = false;
  /// The user asserts bounded partial quotients for the rotation angle.
  bool bpq = false;
};

struct SessionConfig {
  std::vector<GeneratorSpec> generators;
  std::vector<std::string> lengths;  // field expressions
  std::vector<int> permutation;
  std::optional<SkewConfig> skew;
  Bounds bounds;
  Flags flags;
};

/// Defaults for bounds absent from a config, from IETLAB_BOUNDS
/// ("n_max=4096,p_max=64,return_budget=1000000"; any subset).
Bounds default_bounds();

/// Throws InputError on malformed documents or unknown keys.
SessionConfig parse_config(const Json& doc, const Bounds& defaults = default_bounds());
SessionConfig load_config(const std::string& path, const Bounds& defaults = default_bounds());
/// Canonical form; to_json(parse_config(to_json(c))) == to_json(c).
Json to_json(const SessionConfig& c);

struct Session {
  SessionConfig config;
  std::shared_ptr<const Field> field;
  Iet base;
  std::optional<SkewSpec> skew;
};

/// Parses every expression; throws InputError for unknown generators etc.
Session build_session(const SessionConfig& config);

// Rendering -----------------------------------------------------------------

Json to_json(const Field& f, const FieldElement& x);  // {"expr": ..., "approx": ...}
Json to_json(const Integer& z);                       // number, or string when huge
Json to_json(const Field& f, const Verdict& v);
Json to_json(const RauzyGraph& g, const Alphabet& a);
Json to_json(const FullRamification& r);
Json to_json(const MerrillResult& r);
Json to_json(const UeAdvisory& a);
Json to_json(const FrequencyReport& r);
Json to_json(const RecurrenceReport& r);

// Pipeline ------------------------------------------------------------------

enum ExitCode { kDecided = 0, kInputError = 1, kUndecided = 2, kInconsistent = 3 };

struct Analysis {
  Json document;
  int exit_code = kDecided;
};

/// Every decider applicable to the session, cross-checked.
Analysis analyze(const Session& s);

/// Closed-form verdicts only: [{"name", "applicable", "verdict"}].
Json closed_forms(const Session& s);

/// The skew IET (merged when the session asks for it) and its coding.
Json describe_extension(const Session& s);

}  // namespace ietlab
