// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "twisted/error.hpp"
#include "twisted/scenario.hpp"
#include "twisted/verifier.hpp"

using namespace twisted;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Automorphism ident(const FamilySpec& f) { return Automorphism::identity(make_group(f)); }

Automorphism conj(const FamilySpec& f) {
  const GroupDescriptor g = make_group(f);
  return Automorphism::antihol(g, Matrix::Identity(g.ambient_size(), g.ambient_size()));
}

std::vector<Automorphism> rank_configurations() {
  std::vector<Automorphism> out;
  for (const FamilySpec& f : {FamilySpec::unitary(2), FamilySpec::unitary(3), FamilySpec::special_unitary(2),
                              FamilySpec::special_unitary(3), FamilySpec::special_orthogonal(3)}) {
    out.push_back(ident(f));
    if (f.family != Family::SpecialOrthogonal) out.push_back(conj(f));
  }
  return out;
}

std::string failed_cases(const CheckReport& r) {
  std::string out;
  for (const auto& c : r.details)
    if (!c.passed) out += " [" + r.inputs + ": " + c.label + (c.note.empty() ? "" : " " + c.note) + "]";
  return out;
}

Outcome criterion1() {
  const CheckReport r = check_u3_fixtures();
  return {r.passed, r.passed ? "Z/N fixtures hold on the block-SO(2) torus" : failed_cases(r)};
}

// Independent cross-check: run the oracle on every pair of torsion points
// and compare the resulting partition with the Weyl-orbit partition.
Outcome criterion2() {
  struct Case {
    Automorphism s;
    int n;
    std::size_t expected;
  };
  const std::vector<Case> cases = {{conj(FamilySpec::special_unitary(2)), 2, 1},
                                   {ident(FamilySpec::special_unitary(2)), 2, 2},
                                   {ident(FamilySpec::unitary(2)), 2, 3},
                                   {conj(FamilySpec::unitary(1)), 2, 1}};
  Outcome o{true, ""};
  for (const auto& c : cases) {
    const CohomologyResult r = compute_h1(c.s, c.n);
    const auto part = r.partition();
    int undecided = 0;
    bool agree = true;
    for (std::size_t i = 0; i < r.points.size(); ++i)
      for (std::size_t j = i + 1; j < r.points.size(); ++j) {
        const ConjugacyDecision d = are_sigma_conjugate(r.points[i].element, r.points[j].element, c.s,
                                                        1000 + i * 100 + j);
        if (d.verdict == Verdict::Undecided) ++undecided;
        else if ((d.verdict == Verdict::Conjugate) != (part[i] == part[j])) agree = false;
      }
    const bool ok = r.status == Status::Complete && r.classes.size() == c.expected && undecided == 0 && agree;
    std::ostringstream s;
    s << " " << c.s.describe() << " n=" << c.n << ": " << r.classes.size() << " classes";
    if (!ok) s << " (expected " << c.expected << ", undecided " << undecided << ", agree " << agree << ")";
    o.detail += s.str();
    o.pass = o.pass && ok;
  }
  return o;
}

Outcome run_over(const std::vector<Automorphism>& configs, const std::function<CheckReport(const Automorphism&)>& f) {
  Outcome o{true, ""};
  for (const auto& s : configs) {
    const CheckReport r = f(s);
    if (!r.passed) o.detail += failed_cases(r);
    o.pass = o.pass && r.passed;
  }
  if (o.pass) o.detail = std::to_string(configs.size()) + " configurations";
  return o;
}

Outcome criterion3() {
  return run_over(rank_configurations(), [](const Automorphism& s) { return check_rank_theorem(s, 20); });
}

Outcome criterion4() {
  return run_over(rank_configurations(), [](const Automorphism& s) { return check_orbit_dimension_lemma(s, 20); });
}

Outcome criterion5() {
  const CheckReport r = check_semisimplicity_gate();
  return {r.passed, r.passed ? std::to_string(r.details.size()) + " cases" : failed_cases(r)};
}

Outcome criterion6() {
  const CheckReport r = check_z_action(100);
  return {r.passed, r.passed ? "100/100 torus points conjugate to e" : failed_cases(r)};
}

Outcome criterion7() {
  const GroupDescriptor u2 = make_group(FamilySpec::unitary(2));
  Matrix b = Matrix::Identity(2, 2);
  b(1, 1) = Complex(0.0, 1.0);
  const Automorphism s = Automorphism::hol(u2, b);
  const CheckReport r = check_generator_independence(s, 4, 3);
  return {r.passed, r.passed ? s.describe() + ", n=4, r=3, partitions matched through t -> t^3" : failed_cases(r)};
}

Outcome criterion8() {
  Outcome o{true, ""};
  int count = 0;
  for (const auto& c : builtin_configurations())
    for (int n : c.ns) {
      const CheckReport r = check_finiteness(c.sigma, n, {0, 1, 2});
      ++count;
      if (!r.passed) o.detail += failed_cases(r);
      o.pass = o.pass && r.passed;
    }
  if (o.pass) o.detail = std::to_string(count) + " (configuration, n) pairs x 3 seeds";
  return o;
}

Outcome criterion9() {
  std::vector<Automorphism> smooth;
  for (const auto& c : builtin_configurations())
    if (c.sigma.kind() != AutomorphismKind::Lattice && c.sigma.group().dim() > 0) smooth.push_back(c.sigma);
  Outcome o = run_over(smooth, [](const Automorphism& s) { return check_gradient(s, 20); });

  const std::vector<std::string> scenarios = {
      R"({"group": {"family": "SU", "n_or_k": 2}, "automorphism": {"kind": "antihol"}, "action": {"cyclic": 2}})",
      R"({"group": {"family": "U", "n_or_k": 2}, "automorphism": {"kind": "hol"}, "action": {"cyclic": 2}})",
      R"({"group": {"family": "U", "n_or_k": 3}, "automorphism": {"kind": "hol"}, "action": {"cyclic": 4}})",
      R"({"group": {"family": "SU", "n_or_k": 3}, "automorphism": {"kind": "antihol"}, "action": {"cyclic": 4}})",
      R"({"group": {"family": "SO", "n_or_k": 3}, "automorphism": {"kind": "hol"}, "action": {"cyclic": 4}})",
      R"({"group": {"family": "torus", "n_or_k": 2}, "automorphism": {"kind": "lattice", "matrix": [[2, 1], [1, 1]]},
          "action": {"integers": true}, "pairs": [[[0.7, 2.9], [0.0, 0.0]], [[5.0, 3.0], [0.1, 0.3]]]})",
      R"({"group": {"family": "SU", "n_or_k": 2}, "automorphism": {"kind": "hol"}, "action": {"cyclic": 2},
          "pairs": [[[1.5707963267948966, -1.5707963267948966], [-1.5707963267948966, 1.5707963267948966]]]})"};
  int checked = 0;
  for (const auto& text : scenarios) {
    const ScenarioConfig c = parse_scenario(json::parse(text));
    const GroupDescriptor g = build_group(c);
    const Automorphism s = build_automorphism(c, g);
    json report;
    if (c.pairs.empty()) {
      report = h1_report(c, compute_h1(s, *c.cyclic, build_h1_config(c)), 0.0);
    } else {
      std::vector<ConjugacyDecision> ds;
      for (const auto& [a, b] : c.pairs)
        ds.push_back(decide_cohomologous_Z(s, build_pair_element(a, g), build_pair_element(b, g), build_h1_config(c)));
      report = decide_report(c, ds, 0.0);
    }
    // Round-trip through text so only the serialised report is used.
    const ReverifyResult v = reverify_report(json::parse(report.dump()));
    checked += v.checked;
    for (const auto& f : v.failures) o.detail += " [" + f + "]";
    o.pass = o.pass && v.ok();
  }
  if (o.pass) o.detail += ", " + std::to_string(checked) + " report witnesses re-verified";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "U(3) Z/N fixtures", 1.0, criterion1},
      {2, "class counts, oracle-validated", 30.0, criterion2},
      {3, "fixed rank under inner twists", 120.0, criterion3},
      {4, "orbit dimension + rank = dim G", 120.0, criterion4},
      {5, "1-semisimplicity gate", 1.0, criterion5},
      {6, "integer action, cat map", 5.0, criterion6},
      {7, "generator independence", 60.0, criterion7},
      {8, "finiteness and seed determinism", 300.0, criterion8},
      {9, "gradient and witness re-verification", 300.0, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d %-40s %s  %8.3fs / %gs  %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.limit,
                o.detail.c_str(), in_time ? "" : " (time limit exceeded)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
