#include "twisted/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "twisted/error.hpp"
#include "twisted/integer_lattice.hpp"

namespace twisted {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) config_error(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) config_error("unknown field '" + k + "' in " + where);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

FamilySpec parse_group(const json& j) {
  if (j.is_object() && j.contains("product")) {
    only_keys(j, "group", {"product"});
    if (!j.at("product").is_array() || j.at("product").empty()) config_error("product must be a non-empty list");
    std::vector<FamilySpec> fs;
    for (const auto& f : j.at("product")) fs.push_back(parse_group(f));
    return FamilySpec::product(std::move(fs));
  }
  only_keys(j, "group", {"family", "n_or_k"});
  if (!j.contains("family") || !j.at("family").is_string()) config_error("group.family must be a string");
  if (!j.contains("n_or_k") || !j.at("n_or_k").is_number_integer()) config_error("group.n_or_k must be an integer");
  const std::string f = lower(j.at("family").get<std::string>());
  const int n = j.at("n_or_k").get<int>();
  if (f == "u") return FamilySpec::unitary(n);
  if (f == "su") return FamilySpec::special_unitary(n);
  if (f == "so") return FamilySpec::special_orthogonal(n);
  if (f == "torus" || f == "t") return FamilySpec::torus(n);
  config_error("unknown group family '" + j.at("family").get<std::string>() + "'");
}

json group_json(const FamilySpec& f) {
  if (f.family == Family::Product) {
    json a = json::array();
    for (const auto& x : f.factors) a.push_back(group_json(x));
    return {{"product", a}};
  }
  const char* name = f.family == Family::Unitary             ? "U"
                     : f.family == Family::SpecialUnitary    ? "SU"
                     : f.family == Family::SpecialOrthogonal ? "SO"
                                                             : "torus";
  return {{"family", name}, {"n_or_k", f.size}};
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  config_error("complex entries must be [re, im] pairs");
}

IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) config_error("lattice matrix must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) config_error("lattice matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number_integer()) config_error("lattice entries must be integers");
      m(i, k) = row[static_cast<std::size_t>(k)].get<std::int64_t>();
    }
  }
  return m;
}

PairElement parse_pair_element(const json& j) {
  PairElement p;
  if (!j.is_array() || j.empty()) config_error("pair elements must be non-empty lists");
  if (j[0].is_array()) {
    p.matrix = matrix_from_json(j);
  } else {
    for (const auto& x : j) {
      if (!x.is_number()) config_error("angles must be numbers");
      p.angles.push_back(x.get<double>());
    }
  }
  return p;
}

json pair_element_json(const PairElement& p) { return p.matrix ? matrix_to_json(*p.matrix) : json(p.angles); }

template <class T>
T get_number(const json& j, const std::string& name) {
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) config_error(name + " must be an integer");
  } else {
    if (!j.is_number()) config_error(name + " must be a number");
  }
  return j.get<T>();
}

json rational_json(std::int64_t num, std::int64_t den) {
  const std::int64_t g = gcd64(num, den);
  return {{"num", num / (g ? g : 1)}, {"den", den / (g ? g : 1)}};
}

json certificate_json(const SpectralCertificate& c) {
  auto list = [](const std::vector<Complex>& v) {
    json a = json::array();
    for (Complex z : v) a.push_back({z.real(), z.imag()});
    return a;
  };
  return {{"first", list(c.first)}, {"second", list(c.second)}, {"distance", c.distance}};
}

json residual_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) config_error("matrix must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) config_error("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

ScenarioConfig parse_scenario(const json& j) {
  only_keys(j, "config", {"group", "automorphism", "action", "pairs", "tolerances", "search", "seed"});
  ScenarioConfig c;
  if (!j.contains("group")) config_error("missing field 'group'");
  c.group = parse_group(j.at("group"));

  if (j.contains("automorphism")) {
    const json& a = j.at("automorphism");
    only_keys(a, "automorphism", {"kind", "matrix"});
    if (!a.contains("kind") || !a.at("kind").is_string()) config_error("automorphism.kind must be a string");
    const std::string kind = lower(a.at("kind").get<std::string>());
    if (kind == "hol") c.kind = AutomorphismKind::Hol;
    else if (kind == "antihol") c.kind = AutomorphismKind::AntiHol;
    else if (kind == "lattice") c.kind = AutomorphismKind::Lattice;
    else config_error("unknown automorphism kind '" + a.at("kind").get<std::string>() + "'");
    if (a.contains("matrix")) {
      if (c.kind == AutomorphismKind::Lattice) c.lattice = int_matrix_from_json(a.at("matrix"));
      else c.conjugator = matrix_from_json(a.at("matrix"));
    }
  }

  if (!j.contains("action")) config_error("missing field 'action'");
  const json& act = j.at("action");
  only_keys(act, "action", {"cyclic", "integers"});
  if (act.contains("cyclic") == act.contains("integers")) config_error("action needs exactly one of cyclic, integers");
  if (act.contains("cyclic")) {
    c.cyclic = get_number<int>(act.at("cyclic"), "action.cyclic");
    if (*c.cyclic < 1) config_error("action.cyclic must be positive");
  } else {
    if (!act.at("integers").is_boolean() || !act.at("integers").get<bool>()) config_error("action.integers must be true");
    c.integers = true;
  }

  if (j.contains("pairs")) {
    if (!j.at("pairs").is_array()) config_error("pairs must be a list");
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) config_error("each pair must have two elements");
      c.pairs.emplace_back(parse_pair_element(p[0]), parse_pair_element(p[1]));
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, "tolerances", {"membership", "witness", "rank_threshold"});
    if (t.contains("membership")) c.membership_tol = get_number<double>(t.at("membership"), "tolerances.membership");
    if (t.contains("witness")) c.witness_tol = get_number<double>(t.at("witness"), "tolerances.witness");
    if (t.contains("rank_threshold"))
      c.rank_threshold = get_number<double>(t.at("rank_threshold"), "tolerances.rank_threshold");
    if (c.membership_tol <= 0 || c.witness_tol <= 0 || c.rank_threshold <= 0) config_error("tolerances must be positive");
  }
  if (j.contains("search")) {
    const json& s = j.at("search");
    only_keys(s, "search", {"restarts", "budget"});
    if (s.contains("restarts")) c.restarts = get_number<int>(s.at("restarts"), "search.restarts");
    if (s.contains("budget")) c.budget = get_number<int>(s.at("budget"), "search.budget");
    if (c.restarts < 1 || c.budget < 0) config_error("search.restarts must be >= 1 and search.budget >= 0");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() >= 0))
      config_error("seed must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(j);
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["group"] = group_json(c.group);
  json a{{"kind", to_string(c.kind)}};
  const GroupDescriptor g = make_group(c.group);
  const int n = g.ambient_size();
  if (c.kind == AutomorphismKind::Lattice) {
    const IntMatrix m = c.lattice.value_or(IntMatrix::Identity(n, n));
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
      rows.push_back(row);
    }
    a["matrix"] = rows;
  } else {
    a["matrix"] = matrix_to_json(c.conjugator.value_or(Matrix::Identity(n, n)));
  }
  j["automorphism"] = a;
  j["action"] = c.cyclic ? json{{"cyclic", *c.cyclic}} : json{{"integers", true}};
  json pairs = json::array();
  for (const auto& [x, y] : c.pairs) pairs.push_back({pair_element_json(x), pair_element_json(y)});
  j["pairs"] = pairs;
  j["tolerances"] = {{"membership", c.membership_tol}, {"witness", c.witness_tol}, {"rank_threshold", c.rank_threshold}};
  j["search"] = {{"restarts", c.restarts}, {"budget", c.budget}};
  j["seed"] = c.seed;
  return j;
}

GroupDescriptor build_group(const ScenarioConfig& c) { return make_group(c.group, c.membership_tol); }

Automorphism build_automorphism(const ScenarioConfig& c, const GroupDescriptor& g) {
  const int n = g.ambient_size();
  switch (c.kind) {
    case AutomorphismKind::Hol: return Automorphism::hol(g, c.conjugator.value_or(Matrix::Identity(n, n)));
    case AutomorphismKind::AntiHol: return Automorphism::antihol(g, c.conjugator.value_or(Matrix::Identity(n, n)));
    case AutomorphismKind::Lattice: return Automorphism::lattice(g, c.lattice.value_or(IntMatrix::Identity(n, n)));
  }
  throw Error(ErrorKind::ConfigError, "unknown automorphism kind");
}

H1Config build_h1_config(const ScenarioConfig& c, Execution execution) {
  H1Config h;
  h.seed = c.seed;
  h.rank_threshold = c.rank_threshold;
  h.oracle.witness_tol = c.witness_tol;
  h.oracle.restarts = c.restarts;
  h.oracle.execution = execution;
  h.search.budget = c.budget;
  h.search.execution = execution;
  return h;
}

GroupElement build_pair_element(const PairElement& p, const GroupDescriptor& g) {
  if (p.matrix) return make_element(g, *p.matrix);
  const int n = g.ambient_size();
  if (static_cast<int>(p.angles.size()) != n)
    throw Error(ErrorKind::ConfigError, "pair angles need " + std::to_string(n) + " entries");
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = std::polar(1.0, p.angles[static_cast<std::size_t>(k)]);
  return make_element(g, m);
}

json h1_report(const ScenarioConfig& c, const CohomologyResult& r, double seconds) {
  json j;
  j["config"] = to_json(c);
  j["group"] = r.group.name();
  j["automorphism"] = r.automorphism.describe();
  j["n"] = r.n;
  j["torus_rank"] = r.torus_rank();
  j["torsion_count"] = r.points.size();
  j["class_count"] = r.classes.size();
  j["weyl_order"] = r.weyl.order;
  j["saturated"] = r.weyl.saturated;
  j["search_rounds"] = r.weyl.search_rounds;
  json basis = json::array();
  for (const auto& h : r.torus.t_basis) basis.push_back(matrix_to_json(h.matrix));
  j["torus_basis"] = basis;
  json points = json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    json coords = json::array();
    for (std::int64_t a : r.points[i].numerators) coords.push_back(rational_json(a, r.points[i].denominator));
    points.push_back({{"index", i}, {"coords", coords}, {"matrix", matrix_to_json(r.points[i].element.matrix)}});
  }
  j["points"] = points;
  json classes = json::array();
  for (const auto& cl : r.classes) {
    json wits = json::array();
    for (const auto& w : cl.witnesses)
      wits.push_back({{"from", w.from},
                      {"to", w.to},
                      {"g", matrix_to_json(w.g.matrix)},
                      {"residual", w.residual},
                      {"tolerance", c.witness_tol}});
    classes.push_back({{"representative", cl.representative}, {"members", cl.members}, {"witnesses", wits}});
  }
  j["classes"] = classes;
  json certs = json::array();
  for (const auto& ce : r.certificates) {
    json x = certificate_json(ce.data);
    x["points"] = {ce.first, ce.second};
    certs.push_back(x);
  }
  j["certificates"] = certs;
  j["status"] = to_string(r.status);
  json unresolved = json::array();
  for (const auto& [a, b] : r.unresolved) unresolved.push_back({a, b});
  j["unresolved"] = unresolved;
  j["seed"] = c.seed;
  j["timing_seconds"] = seconds;
  return j;
}

json decide_report(const ScenarioConfig& c, const std::vector<ConjugacyDecision>& decisions, double seconds) {
  json j;
  j["config"] = to_json(c);
  json out = json::array();
  bool complete = true;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const ConjugacyDecision& d = decisions[i];
    complete = complete && d.verdict != Verdict::Undecided;
    out.push_back({{"pair", i},
                   {"verdict", to_string(d.verdict)},
                   {"witness", d.witness ? matrix_to_json(d.witness->matrix) : json(nullptr)},
                   {"residual", residual_json(d.best_residual)},
                   {"tolerance", c.witness_tol},
                   {"certificate", d.certificate ? certificate_json(*d.certificate) : json(nullptr)},
                   {"restarts_used", d.restarts_used}});
  }
  j["decisions"] = out;
  j["status"] = complete ? "complete" : "incomplete";
  j["seed"] = c.seed;
  j["timing_seconds"] = seconds;
  return j;
}

ReverifyResult reverify_report(const json& report) {
  ReverifyResult out;
  const ScenarioConfig c = parse_scenario(report.at("config"));
  const GroupDescriptor g = build_group(c);
  const Automorphism s = build_automorphism(c, g);
  auto check = [&](const std::string& label, const Matrix& w, const Matrix& from, const Matrix& to, const json& rec) {
    ++out.checked;
    const double residual = (twisted_conjugate_matrix(s, w, from) - to).norm();
    const double tolerance = rec.at("tolerance").get<double>();
    const double stated = rec.at("residual").get<double>();
    out.worst_ratio = std::max(out.worst_ratio, residual / tolerance);
    if (residual > tolerance || std::abs(residual - stated) > 1e-12 + 1e-6 * stated)
      out.failures.push_back(label + ": recomputed residual " + std::to_string(residual));
    if (!contains(g, w).member) out.failures.push_back(label + ": witness is not in the group");
  };
  if (report.contains("classes")) {
    std::vector<Matrix> points;
    for (const auto& p : report.at("points")) points.push_back(matrix_from_json(p.at("matrix")));
    for (const auto& cl : report.at("classes"))
      for (const auto& w : cl.at("witnesses")) {
        const auto from = w.at("from").get<std::size_t>(), to = w.at("to").get<std::size_t>();
        check("witness " + std::to_string(from) + "->" + std::to_string(to), matrix_from_json(w.at("g")), points.at(from),
              points.at(to), w);
      }
  }
  if (report.contains("decisions")) {
    for (const auto& d : report.at("decisions")) {
      if (d.at("witness").is_null()) continue;
      const auto i = d.at("pair").get<std::size_t>();
      const auto& [a, b] = c.pairs.at(i);
      check("pair " + std::to_string(i), matrix_from_json(d.at("witness")), build_pair_element(a, g).matrix,
            build_pair_element(b, g).matrix, d);
    }
  }
  return out;
}

}  // namespace twisted
