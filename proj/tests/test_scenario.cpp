#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "twisted/error.hpp"
#include "twisted/scenario.hpp"

using namespace twisted;
using nlohmann::json;

namespace {

std::string data(const std::string& name) {
  const char* dir = std::getenv("TWISTED_TEST_DATA");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

ErrorKind parse_error(const json& j) {
  try {
    parse_scenario(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parse succeeded");
  return ErrorKind::InvalidArgument;
}

json h1(const ScenarioConfig& c) {
  const GroupDescriptor g = build_group(c);
  const CohomologyResult r = compute_h1(build_automorphism(c, g), *c.cyclic, build_h1_config(c));
  return h1_report(c, r, 0.0);
}

}  // namespace

TEST_CASE("canonical form round-trips") {
  for (const char* f : {"su2_conjugation.json", "u2_identity.json", "cat_map_decide.json", "shear_integers.json"}) {
    const ScenarioConfig c = load_scenario(data(f));
    const json canon = to_json(c);
    CHECK(to_json(parse_scenario(canon)) == canon);
    CHECK(to_json(parse_scenario(json::parse(canon.dump()))) == canon);
  }
}

TEST_CASE("strict parsing") {
  const json base = json::parse(R"({"group": {"family": "SU", "n_or_k": 2}, "automorphism": {"kind": "antihol"},
                                     "action": {"cyclic": 2}})");
  CHECK_NOTHROW(parse_scenario(base));
  json j = base;
  j["colour"] = "red";
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["group"]["size"] = 3;
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["action"] = {{"cyclic", 2}, {"integers", true}};
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["action"] = {{"cyclic", 0}};
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["automorphism"]["kind"] = "outer";
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["seed"] = -1;
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["tolerances"] = {{"witness", 0.0}};
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  j = base;
  j["automorphism"] = json::parse(R"({"kind": "hol", "matrix": [[[1, 0]], [[0, 0], [1, 0]]]})");
  CHECK(parse_error(j) == ErrorKind::ConfigError);
  CHECK_THROWS_AS(load_scenario(data("unknown_field.json")), Error);
  CHECK_THROWS_AS(load_scenario(data("malformed.json")), Error);
  CHECK_THROWS_AS(load_scenario(data("does_not_exist.json")), Error);
}

TEST_CASE("matrix JSON encoding") {
  Matrix m(2, 2);
  m << Complex(1, 2), Complex(-0.5, 0), Complex(0, 1e-17), Complex(3, -4);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK(matrix_from_json(json::parse(matrix_to_json(m).dump())) == m);
}

TEST_CASE("h1 reports re-verify and are reproducible") {
  const ScenarioConfig c = load_scenario(data("u2_identity.json"));
  json a = h1(c), b = h1(c);
  CHECK(a.at("class_count") == 3);
  CHECK(a.at("status") == "complete");
  CHECK(a.dump() == b.dump());
  const ReverifyResult v = reverify_report(json::parse(a.dump()));
  CHECK(v.ok());
  CHECK(v.checked == 1);
  CHECK(v.worst_ratio < 1.0);

  json tampered = a;
  for (auto& cl : tampered["classes"])
    for (auto& w : cl["witnesses"]) w["g"][0][0] = json::array({0.0, 1.0});
  CHECK_FALSE(reverify_report(tampered).ok());
}

TEST_CASE("decide reports re-verify") {
  const ScenarioConfig c = load_scenario(data("su2_identity_decide.json"));
  const GroupDescriptor g = build_group(c);
  const Automorphism s = build_automorphism(c, g);
  std::vector<ConjugacyDecision> ds;
  for (const auto& [x, y] : c.pairs)
    ds.push_back(decide_cohomologous_Z(s, build_pair_element(x, g), build_pair_element(y, g), build_h1_config(c)));
  const json r = decide_report(c, ds, 0.0);
  const ReverifyResult v = reverify_report(json::parse(r.dump()));
  CHECK(v.ok());
  CHECK(v.checked >= 1);
  for (const auto& d : r.at("decisions")) CHECK(d.at("verdict") != "undecided");
}
