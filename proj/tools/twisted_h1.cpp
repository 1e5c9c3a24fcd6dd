#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "twisted/cohomology.hpp"
#include "twisted/error.hpp"
#include "twisted/scenario.hpp"
#include "twisted/verifier.hpp"

using nlohmann::json;
using namespace twisted;

namespace {

constexpr int kComplete = 0;
constexpr int kFailure = 1;
constexpr int kIncomplete = 2;
constexpr int kUsage = 64;

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> restarts;
  std::string json_path;
  bool quiet = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_json(const Flags& f, const json& j) {
  if (f.json_path.empty()) return;
  std::ofstream out(f.json_path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + f.json_path + "'");
  out << j.dump(2) << "\n";
}

ScenarioConfig load_with_overrides(const std::string& path, const Flags& f) {
  ScenarioConfig c = load_scenario(path);
  if (f.seed) c.seed = *f.seed;
  if (f.tol) c.witness_tol = *f.tol;
  if (f.restarts) c.restarts = *f.restarts;
  return c;
}

std::string fraction(std::int64_t num, std::int64_t den) {
  std::ostringstream os;
  const std::int64_t g = std::gcd(num, den);
  if (num == 0) return "0";
  os << num / g;
  if (den / g != 1) os << "/" << den / g;
  return os.str();
}

void print_h1(const CohomologyResult& r) {
  std::cout << "group          " << r.group.name() << "\n"
            << "automorphism   " << r.automorphism.describe() << "\n"
            << "n              " << r.n << "\n"
            << "torus rank     " << r.torus_rank() << "\n"
            << "|E_n(T)|       " << r.points.size() << "\n"
            << "|W| on E_n(T)  " << r.weyl.order << "\n"
            << "classes        " << r.classes.size() << "\n"
            << "status         " << to_string(r.status) << "\n\n";
  std::cout << std::left << std::setw(7) << "class" << std::setw(32) << "representative (units of 2pi)"
            << "members\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const TorsionPoint& p = r.points[static_cast<std::size_t>(r.classes[c].representative)];
    std::string coords = "(";
    for (std::size_t j = 0; j < p.numerators.size(); ++j)
      coords += (j ? ", " : "") + fraction(p.numerators[j], p.denominator);
    coords += ")";
    std::string members;
    for (int m : r.classes[c].members) members += (members.empty() ? "" : " ") + std::to_string(m);
    std::cout << std::setw(7) << c << std::setw(32) << coords << members << "\n";
  }
  for (const auto& [a, b] : r.unresolved) std::cout << "unresolved     points " << a << " and " << b << "\n";
}

int run_compute(const std::string& path, const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig c = load_with_overrides(path, f);
  const GroupDescriptor g = build_group(c);
  const Automorphism s = build_automorphism(c, g);
  if (c.integers) {
    const TorusCohomologyZ z = torus_cohomology_Z(s, c.rank_threshold);
    json chars = json::array();
    for (Eigen::Index i = 0; i < z.characters.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < z.characters.cols(); ++k) row.push_back(z.characters(i, k));
      chars.push_back(row);
    }
    write_json(f, {{"config", to_json(c)},
                   {"group", g.name()},
                   {"automorphism", s.describe()},
                   {"h1_dimension", z.dimension},
                   {"characters", chars},
                   {"status", "complete"},
                   {"seed", c.seed},
                   {"timing_seconds", seconds_since(t0)}});
    if (!f.quiet)
      std::cout << "group          " << g.name() << "\nautomorphism   " << s.describe()
                << "\naction         integers\nH1             "
                << (z.dimension == 0 ? std::string("a single class") : "torus of dimension " + std::to_string(z.dimension))
                << "\n";
    return kComplete;
  }
  const CohomologyResult r = compute_h1(s, *c.cyclic, build_h1_config(c));
  write_json(f, h1_report(c, r, seconds_since(t0)));
  if (!f.quiet) print_h1(r);
  return r.status == Status::Complete ? kComplete : kIncomplete;
}

int run_decide(const std::string& path, const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig c = load_with_overrides(path, f);
  if (c.pairs.empty()) throw Error(ErrorKind::ConfigError, "decide needs a non-empty 'pairs' list");
  const GroupDescriptor g = build_group(c);
  const Automorphism s = build_automorphism(c, g);
  std::vector<std::pair<GroupElement, GroupElement>> elems;
  for (const auto& [a, b] : c.pairs) elems.emplace_back(build_pair_element(a, g), build_pair_element(b, g));
  std::vector<ConjugacyDecision> out;
  H1Config h = build_h1_config(c);
  bool complete = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out.push_back(decide_cohomologous_Z(s, elems[i].first, elems[i].second, h));
    complete = complete && out.back().verdict != Verdict::Undecided;
  }
  write_json(f, decide_report(c, out, seconds_since(t0)));
  if (!f.quiet) {
    std::cout << "group          " << g.name() << "\nautomorphism   " << s.describe() << "\n\n";
    std::cout << std::left << std::setw(6) << "pair" << std::setw(16) << "verdict" << "detail\n";
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::ostringstream detail;
      if (out[i].witness) detail << "witness residual " << out[i].best_residual;
      else if (out[i].certificate) detail << "invariant distance " << out[i].certificate->distance;
      else detail << "best residual " << out[i].best_residual << " after " << out[i].restarts_used << " restarts";
      std::cout << std::setw(6) << i << std::setw(16) << to_string(out[i].verdict) << detail.str() << "\n";
    }
  }
  return complete ? kComplete : kIncomplete;
}

int run_verify(const std::string& suite, const Flags& f) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw Error(ErrorKind::UnknownSuite, "unknown suite '" + suite + "' (known: " + list + ")");
  }
  CheckOptions opt;
  if (f.seed) opt.seed = *f.seed;
  if (f.tol) opt.witness_tol = *f.tol;
  if (f.restarts) opt.restarts = *f.restarts;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckReport> reports = run_suite(suite, opt);
  bool passed = true;
  json all = json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed;
    all.push_back(to_json(r));
  }
  write_json(f, {{"suite", suite}, {"seed", opt.seed}, {"passed", passed}, {"reports", all},
                 {"timing_seconds", seconds_since(t0)}});
  if (!f.quiet) {
    for (const auto& r : reports) {
      std::cout << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(24) << r.check_name << r.inputs;
      for (const auto& v : r.residuals) std::cout << "  " << v.name << "=" << v.value;
      std::cout << "\n";
      if (!r.passed)
        for (const auto& d : r.details)
          if (!d.passed) std::cout << "      failed: " << d.label << (d.note.empty() ? "" : " (" + d.note + ")") << "\n";
    }
    std::cout << reports.size() << " checks, " << (passed ? "all passed" : "some failed") << "\n";
  }
  return passed ? kComplete : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonabelian cohomology H^1(Z/n, G) of compact matrix groups via twisted Weyl orbits"};
  app.require_subcommand(1);
  Flags f;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int restarts = 0;
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");
  auto* tol_opt = app.add_option("--tol", tol, "witness tolerance")->check(CLI::PositiveNumber);
  auto* restarts_opt = app.add_option("--restarts", restarts, "oracle restarts")->check(CLI::PositiveNumber);
  app.add_option("--json", f.json_path, "write the machine-readable report here");
  app.add_flag("--quiet", f.quiet, "no text output");

  std::string config_path, suite;
  auto* compute = app.add_subcommand("compute-h1", "classify H^1 for a cyclic action");
  compute->add_option("config", config_path, "scenario JSON")->required();
  auto* decide = app.add_subcommand("decide", "decide twisted conjugacy for the configured pairs");
  decide->add_option("config", config_path, "scenario JSON")->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  for (auto* sub : {compute, decide, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (*seed_opt) f.seed = seed;
  if (*tol_opt) f.tol = tol;
  if (*restarts_opt) f.restarts = restarts;

  try {
    if (*compute) return run_compute(config_path, f);
    if (*decide) return run_decide(config_path, f);
    return run_verify(suite, f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::UnknownSuite) return kUsage;
    try {
      write_json(f, {{"status", "error"}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    } catch (...) {
    }
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
