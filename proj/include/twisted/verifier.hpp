#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "twisted/cohomology.hpp"

namespace twisted {

struct NamedValue {
  std::string name;
  double value = 0.0;
  friend bool operator==(const NamedValue&, const NamedValue&) = default;
};

struct CaseRecord {
  std::string label;
  bool passed = false;
  std::vector<NamedValue> values;
  std::string note;
  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

struct CheckReport {
  std::string check_name;
  std::string inputs;
  bool passed = false;
  std::vector<NamedValue> residuals;
  std::vector<CaseRecord> details;
  std::uint64_t seed = 0;
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

nlohmann::json to_json(const CheckReport& r);
CheckReport check_report_from_json(const nlohmann::json& j);

/// One entry of the built-in configuration matrix.
struct Configuration {
  std::string label;
  Automorphism sigma;
  std::vector<int> ns;  ///< n in {1..4} divisible by the order of sigma
};

std::vector<Configuration> builtin_configurations();

/// Shared knobs for every check.
struct CheckOptions {
  std::uint64_t seed = 0;
  double witness_tol = 1e-7;
  int restarts = 64;
  Execution execution = Execution::Parallel;
};

CheckReport check_rank_theorem(const Automorphism& s, int num_twists, const CheckOptions& opt = {});
CheckReport check_orbit_dimension_lemma(const Automorphism& s, int samples, const CheckOptions& opt = {});
CheckReport check_prop32(const Automorphism& s, const FixedTorus& t, const CheckOptions& opt = {});
/// Passes iff compute_h1 is Complete, transported cocycles classify into
/// their own class, and (when expected >= 0) the class count matches.
CheckReport check_main_theorem(const Automorphism& s, int n, int expected_classes, const CheckOptions& opt = {});
CheckReport check_generator_independence(const Automorphism& s, int n, int r, const CheckOptions& opt = {});
/// The U(3) / complex conjugation / block-SO(2) torus fixtures.
CheckReport check_u3_fixtures(const CheckOptions& opt = {});
CheckReport check_semisimplicity_gate(const CheckOptions& opt = {});
CheckReport check_z_action(int samples, const CheckOptions& opt = {});
/// Weyl group order and class count identical for each seed given.
CheckReport check_finiteness(const Automorphism& s, int n, const std::vector<std::uint64_t>& seeds,
                             const CheckOptions& opt = {});
/// Closed-form gradient of the orbit distance against central differences.
CheckReport check_gradient(const Automorphism& s, int points, const CheckOptions& opt = {});

const std::vector<std::string>& suite_names();

/// Throws UnknownSuite.
std::vector<CheckReport> run_suite(const std::string& name, const CheckOptions& opt = {});

}  // namespace twisted
