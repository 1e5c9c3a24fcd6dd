#include "doctest.h"
#include "twisted/error.hpp"
#include "twisted/verifier.hpp"

using namespace twisted;

namespace {

Automorphism conj(const FamilySpec& f) {
  const GroupDescriptor g = make_group(f);
  return Automorphism::antihol(g, Matrix::Identity(g.ambient_size(), g.ambient_size()));
}

void require_pass(const CheckReport& r) {
  INFO(to_json(r).dump(1));
  CHECK(r.passed);
  CHECK_FALSE(r.details.empty());
}

}  // namespace

TEST_CASE("check reports round-trip through JSON") {
  CheckReport r;
  r.check_name = "sample";
  r.inputs = "identity on U(1), n=2";
  r.passed = true;
  r.residuals = {{"worst", 1.5e-12}, {"count", 3}};
  r.details = {{"a", true, {{"x", 0.25}}, "ok"}, {"b", false, {}, ""}};
  r.seed = 1234567890123ULL;
  CHECK(check_report_from_json(to_json(r)) == r);
  CHECK(check_report_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
}

TEST_CASE("built-in configurations respect the order of sigma") {
  const auto configs = builtin_configurations();
  CHECK(configs.size() >= 15);
  for (const auto& c : configs) {
    const AutomorphismOrder o = order_of(c.sigma);
    REQUIRE(o.finite);
    CHECK_FALSE(c.ns.empty());
    for (int n : c.ns) CHECK(n % o.n == 0);
  }
}

TEST_CASE("individual checks pass") {
  require_pass(check_u3_fixtures());
  require_pass(check_semisimplicity_gate());
  require_pass(check_rank_theorem(conj(FamilySpec::unitary(3)), 6));
  require_pass(check_rank_theorem(Automorphism::identity(make_group(FamilySpec::special_orthogonal(3))), 6));
  require_pass(check_orbit_dimension_lemma(conj(FamilySpec::special_unitary(3)), 10));
  const Automorphism c2 = conj(FamilySpec::unitary(2));
  require_pass(check_prop32(c2, maximal_torus_in_fixed(c2, 0)));
  require_pass(check_main_theorem(conj(FamilySpec::special_unitary(2)), 2, 1));
  require_pass(check_main_theorem(Automorphism::identity(make_group(FamilySpec::unitary(2))), 2, 3));
  require_pass(check_generator_independence(conj(FamilySpec::unitary(2)), 4, 3));
  require_pass(check_z_action(20));
  require_pass(check_finiteness(conj(FamilySpec::unitary(3)), 2, {0, 1, 2}));
  require_pass(check_gradient(conj(FamilySpec::special_unitary(3)), 5));
}

TEST_CASE("main theorem check fails on a wrong expected count") {
  CHECK_FALSE(check_main_theorem(conj(FamilySpec::special_unitary(2)), 2, 2).passed);
}

TEST_CASE("suites") {
  const auto& names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  CHECK(std::find(names.begin(), names.end(), "rank") != names.end());
  const auto reports = run_suite("semisimple");
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].passed);
  try {
    run_suite("no-such-suite");
    FAIL("expected UnknownSuite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownSuite);
  }
}
