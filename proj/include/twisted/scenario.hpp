#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twisted/cohomology.hpp"

namespace twisted {

/// A pair element is either diagonal angles (radians) or a full matrix.
struct PairElement {
  std::vector<double> angles;
  std::optional<Matrix> matrix;
};

struct ScenarioConfig {
  FamilySpec group;
  AutomorphismKind kind = AutomorphismKind::Hol;
  std::optional<Matrix> conjugator;  ///< identity when absent
  std::optional<IntMatrix> lattice;  ///< identity when absent
  std::optional<int> cyclic;
  bool integers = false;
  std::vector<std::pair<PairElement, PairElement>> pairs;
  double membership_tol = 1e-9;
  double witness_tol = 1e-7;
  double rank_threshold = 1e-8;
  int restarts = 64;
  int budget = 64;
  std::uint64_t seed = 0;
};

/// Strict parse: unknown fields and malformed values throw ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::string& path);
/// Canonical form with every default written out.
nlohmann::json to_json(const ScenarioConfig& c);

GroupDescriptor build_group(const ScenarioConfig& c);
Automorphism build_automorphism(const ScenarioConfig& c, const GroupDescriptor& g);
H1Config build_h1_config(const ScenarioConfig& c, Execution execution = Execution::Parallel);
GroupElement build_pair_element(const PairElement& p, const GroupDescriptor& g);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json h1_report(const ScenarioConfig& c, const CohomologyResult& r, double seconds);

nlohmann::json decide_report(const ScenarioConfig& c, const std::vector<ConjugacyDecision>& decisions, double seconds);

struct ReverifyResult {
  int checked = 0;
  double worst_ratio = 0.0;  ///< max residual / stated residual bound
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Recomputes every witness residual in an h1 or decide report using only
/// the report (the config echo rebuilds sigma).
ReverifyResult reverify_report(const nlohmann::json& report);

}  // namespace twisted
