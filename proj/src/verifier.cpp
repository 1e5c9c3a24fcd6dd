#include "twisted/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "twisted/error.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

using nlohmann::json;

json to_json(const CheckReport& r) {
  json details = json::array();
  for (const auto& c : r.details) {
    json values = json::array();
    for (const auto& v : c.values) values.push_back({{"name", v.name}, {"value", v.value}});
    details.push_back({{"label", c.label}, {"passed", c.passed}, {"values", values}, {"note", c.note}});
  }
  json residuals = json::array();
  for (const auto& v : r.residuals) residuals.push_back({{"name", v.name}, {"value", v.value}});
  return {{"check", r.check_name}, {"inputs", r.inputs},   {"passed", r.passed},
          {"seed", r.seed},        {"residuals", residuals}, {"details", details}};
}

CheckReport check_report_from_json(const json& j) {
  auto values = [](const json& a) {
    std::vector<NamedValue> out;
    for (const auto& v : a) out.push_back(NamedValue{v.at("name").get<std::string>(), v.at("value").get<double>()});
    return out;
  };
  CheckReport r;
  r.check_name = j.at("check").get<std::string>();
  r.inputs = j.at("inputs").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.residuals = values(j.at("residuals"));
  for (const auto& c : j.at("details"))
    r.details.push_back(CaseRecord{c.at("label").get<std::string>(), c.at("passed").get<bool>(), values(c.at("values")),
                                   c.at("note").get<std::string>()});
  return r;
}

namespace {

Matrix eye(const GroupDescriptor& g) { return Matrix::Identity(g.ambient_size(), g.ambient_size()); }

Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (Complex x : d) m(k, k) = x, ++k;
  return m;
}

IntMatrix int2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

H1Config h1_config(const CheckOptions& opt, std::uint64_t seed) {
  H1Config c;
  c.seed = seed;
  c.oracle.witness_tol = opt.witness_tol;
  c.oracle.restarts = opt.restarts;
  c.oracle.execution = opt.execution;
  c.search.execution = opt.execution;
  return c;
}

// Collects case records and folds them into the report's verdict.
class Builder {
 public:
  Builder(std::string name, std::string inputs, std::uint64_t seed) {
    r_.check_name = std::move(name);
    r_.inputs = std::move(inputs);
    r_.seed = seed;
    r_.passed = true;
  }
  void add(std::string label, bool passed, std::vector<NamedValue> values = {}, std::string note = {}) {
    r_.passed = r_.passed && passed;
    r_.details.push_back(CaseRecord{std::move(label), passed, std::move(values), std::move(note)});
  }
  void residual(std::string name, double v) {
    for (auto& x : r_.residuals)
      if (x.name == name) {
        x.value = std::max(x.value, v);
        return;
      }
    r_.residuals.push_back(NamedValue{std::move(name), v});
  }
  // Runs body; an exception fails the case instead of aborting the check.
  void guarded(const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(label, false, {}, e.what());
    }
  }
  CheckReport done() { return std::move(r_); }

 private:
  CheckReport r_;
};

std::string n_label(const Automorphism& s, int n) { return s.describe() + ", n=" + std::to_string(n); }

RealVector random_angles(int r, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  RealVector v(r);
  for (int j = 0; j < r; ++j) v(j) = u(rng);
  return v;
}

}  // namespace

std::vector<Configuration> builtin_configurations() {
  std::vector<Configuration> out;
  auto add = [&](const Automorphism& s) {
    const AutomorphismOrder ord = order_of(s);
    Configuration c{s.describe(), s, {}};
    for (int n = 1; n <= 4; ++n)
      if (ord.finite && n % ord.n == 0) c.ns.push_back(n);
    out.push_back(std::move(c));
  };
  for (const FamilySpec& f : {FamilySpec::unitary(1), FamilySpec::unitary(2), FamilySpec::unitary(3),
                              FamilySpec::special_unitary(2), FamilySpec::special_unitary(3),
                              FamilySpec::special_orthogonal(3), FamilySpec::torus(1), FamilySpec::torus(2)}) {
    const GroupDescriptor g = make_group(f);
    add(Automorphism::identity(g));
    if (f.family != Family::SpecialOrthogonal) add(Automorphism::antihol(g, eye(g)));
    if (f == FamilySpec::torus(2)) {
      add(Automorphism::lattice(g, int2(0, 1, 1, 0)));
      add(Automorphism::lattice(g, int2(0, -1, 1, 0)));
    }
    if (f == FamilySpec::unitary(2)) add(Automorphism::hol(g, diag({1.0, Complex(0.0, 1.0)})));
  }
  return out;
}

CheckReport check_rank_theorem(const Automorphism& s, int num_twists, const CheckOptions& opt) {
  Builder b("rank-theorem", s.describe() + ", twists=" + std::to_string(num_twists), opt.seed);
  b.guarded(s.describe(), [&] {
    const int base = fixed_torus_rank(s, opt.seed);
    for (int i = 0; i < num_twists; ++i) {
      const GroupElement h = random_element(s.group(), derive_seed(opt.seed, 0x7a15, static_cast<std::uint64_t>(i)));
      const int r = fixed_torus_rank(inner_twist(h, s), opt.seed);
      b.add("twist " + std::to_string(i), r == base,
            {{"rank_sigma", static_cast<double>(base)}, {"rank_twisted", static_cast<double>(r)}});
    }
  });
  return b.done();
}

CheckReport check_orbit_dimension_lemma(const Automorphism& s, int samples, const CheckOptions& opt) {
  Builder b("orbit-dimension", s.describe() + ", samples=" + std::to_string(samples), opt.seed);
  b.guarded(s.describe(), [&] {
    int best = 0;
    for (int i = 0; i < samples; ++i)
      best = std::max(best, orbit_dimension(random_element(s.group(), derive_seed(opt.seed, 0x0d1, static_cast<std::uint64_t>(i))), s));
    const int rank = fixed_torus_rank(s, opt.seed);
    b.add(s.describe(), best + rank == s.group().dim(),
          {{"max_orbit_dimension", static_cast<double>(best)},
           {"rank", static_cast<double>(rank)},
           {"dim", static_cast<double>(s.group().dim())}});
  });
  return b.done();
}

CheckReport check_prop32(const Automorphism& s, const FixedTorus& t, const CheckOptions& opt) {
  Builder b("normaliser", s.describe(), opt.seed);
  b.guarded(s.describe(), [&] {
    const GroupDescriptor& g = s.group();
    std::vector<Matrix> candidates;
    for (int i = 0; i < 5; ++i) candidates.push_back(t.element(random_angles(t.rank, derive_seed(opt.seed, 0x32, i))));
    const int n = g.ambient_size();
    for (int mask = 0; mask < (1 << n); ++mask) {
      Matrix d = Matrix::Identity(n, n);
      for (int k = 0; k < n; ++k)
        if ((mask >> k) & 1) d(k, k) = -1.0;
      if (contains(g, d).member) candidates.push_back(d);
    }
    int members = 0;
    for (const auto& c : candidates) {
      const MembershipTest z = is_in_Zsigma(c, t, s);
      if (!z.member) continue;
      ++members;
      const double fixed = (s.apply_matrix(c) - c).norm();
      const MembershipTest nn = is_in_Nsigma(c, t, s);
      b.residual("sigma_fixed", fixed);
      b.add("Z member " + std::to_string(members), fixed < 1e-7 && nn.member,
            {{"sigma_residual", fixed}, {"z_residual", z.residual}, {"n_residual", nn.residual}});
    }
    // Linearised normaliser condition: X - Ad(t) dsigma(X) in t for sampled t.
    std::vector<Matrix> samples{eye(g)};
    for (int i = 0; i < 3; ++i) samples.push_back(t.element(random_angles(t.rank, derive_seed(opt.seed, 0x33, i))));
    std::vector<Matrix> cols;
    for (const auto& e : g.algebra_basis()) {
      Matrix stacked(n * static_cast<Eigen::Index>(samples.size()), n);
      for (std::size_t k = 0; k < samples.size(); ++k)
        stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) =
            t.project_out(e - samples[k] * s.apply_algebra(e) * samples[k].adjoint());
      cols.push_back(stacked);
    }
    const RankDecision d = decide_rank_strict(realify_columns(cols), 1e-8, "linearised normaliser");
    const int nullity = g.dim() - d.rank;
    b.add("linearised normaliser", nullity == t.rank,
          {{"nullity", static_cast<double>(nullity)}, {"rank", static_cast<double>(t.rank)}});
  });
  return b.done();
}

CheckReport check_main_theorem(const Automorphism& s, int n, int expected_classes, const CheckOptions& opt) {
  Builder b("main-theorem", n_label(s, n), opt.seed);
  b.guarded(n_label(s, n), [&] {
    const CohomologyResult r = compute_h1(s, n, h1_config(opt, opt.seed));
    const bool count_ok = expected_classes < 0 || static_cast<int>(r.classes.size()) == expected_classes;
    b.add("status", r.status == Status::Complete && count_ok,
          {{"classes", static_cast<double>(r.classes.size())},
           {"expected", static_cast<double>(expected_classes)},
           {"points", static_cast<double>(r.points.size())},
           {"weyl_order", static_cast<double>(r.weyl.order)},
           {"unresolved", static_cast<double>(r.unresolved.size())}},
          to_string(r.status));
    double worst = 0.0;
    for (const auto& c : r.classes)
      for (const auto& w : c.witnesses) worst = std::max(worst, w.residual);
    b.residual("witness", worst);
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      const GroupElement& z = r.points[static_cast<std::size_t>(r.classes[c].representative)].element;
      const CocycleCheck cc = cocycle_norm_check(z, s, n);
      b.residual("cocycle", cc.residual);
      const GroupElement g = random_element(s.group(), derive_seed(opt.seed, 0xcb, c));
      const auto cls = classify(r, twisted_conjugate(g, z, s), derive_seed(opt.seed, 0xcc, c));
      b.add("class " + std::to_string(c), cc.cocycle && cls && *cls == static_cast<int>(c),
            {{"cocycle_residual", cc.residual}, {"transported_class", cls ? static_cast<double>(*cls) : -1.0}});
    }
  });
  return b.done();
}

namespace {

int power_index(const FixedTorus& t, int n, const Matrix& x, int r) {
  Matrix p = Matrix::Identity(x.rows(), x.cols());
  for (int k = 0; k < r; ++k) p = p * x;
  return torsion_index(t, n, p);
}

}  // namespace

CheckReport check_generator_independence(const Automorphism& s, int n, int r, const CheckOptions& opt) {
  Builder b("generator-independence", n_label(s, n) + ", r=" + std::to_string(r), opt.seed);
  b.guarded(n_label(s, n), [&] {
    if (std::gcd(r, n) != 1) throw Error(ErrorKind::InvalidArgument, "gcd(r, n) must be 1");
    const FixedTorus t = maximal_torus_in_fixed(s, opt.seed);
    const CohomologyResult a = compute_h1_on_torus(s, t, n, h1_config(opt, opt.seed));
    const CohomologyResult c = compute_h1_on_torus(power(s, r), t, n, h1_config(opt, opt.seed));
    // A sigma-cocycle w in T has value w^r at sigma^r, so the partitions
    // correspond through t -> t^r rather than coinciding pointwise.
    const auto pa = a.partition(), pc = c.partition();
    bool same = a.classes.size() == c.classes.size();
    for (std::size_t i = 0; i < a.points.size() && same; ++i)
      for (std::size_t j = 0; j < a.points.size() && same; ++j) {
        const int ri = power_index(t, n, a.points[i].element.matrix, r), rj = power_index(t, n, a.points[j].element.matrix, r);
        same = ri >= 0 && rj >= 0 && (pa[i] == pa[j]) == (pc[static_cast<std::size_t>(ri)] == pc[static_cast<std::size_t>(rj)]);
      }
    b.add("partition", same && a.status == Status::Complete && c.status == Status::Complete,
          {{"classes_sigma", static_cast<double>(a.classes.size())},
           {"classes_power", static_cast<double>(c.classes.size())}});
  });
  return b.done();
}

CheckReport check_u3_fixtures(const CheckOptions& opt) {
  Builder b("u3-fixtures", "U(3) antihol(I), block-SO(2) torus; SU(2) antihol(I)", opt.seed);
  b.guarded("U(3)", [&] {
    const GroupDescriptor g = make_group(FamilySpec::unitary(3));
    const Automorphism s = Automorphism::antihol(g, eye(g));
    Matrix h = Matrix::Zero(3, 3);
    h(0, 1) = 1.0;
    h(1, 0) = -1.0;
    const FixedTorus t = torus_from_basis(s, {h}, opt.seed);

    const Matrix z = diag({1.0, 1.0, -1.0});
    const MembershipTest zt = is_in_Zsigma(z, t, s);
    const double outside = t.log(z).residual;
    b.residual("z_fixture", zt.residual);
    b.add("diag(1,1,-1) in Z, not in T", zt.member && zt.residual < 1e-9 && outside > 1e-3,
          {{"z_residual", zt.residual}, {"distance_to_T", outside}});

    const Matrix n = diag({Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0});
    const MembershipTest nt = is_in_Nsigma(n, t, s);
    const double moved = (s.apply_matrix(n) - n).norm();
    b.residual("n_fixture", nt.residual);
    b.add("diag(i,i,1) in N, not fixed", nt.member && moved > 1e-3, {{"n_residual", nt.residual}, {"sigma_moves", moved}});

    const Matrix r = random_element(g, derive_seed(opt.seed, 0xf1)).matrix;
    const MembershipTest rt = is_in_Zsigma(r, t, s);
    b.add("random element not in Z", !rt.member, {{"z_residual", rt.residual}});

    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, is_in_Zsigma(t.element(random_angles(1, derive_seed(opt.seed, 0xf2, i))), t, s).residual);
    b.add("T inside Z", worst < 1e-7, {{"z_residual", worst}});
  });
  b.guarded("SU(2)", [&] {
    const GroupDescriptor g = make_group(FamilySpec::special_unitary(2));
    const Automorphism s = Automorphism::antihol(g, eye(g));
    const FixedTorus t = maximal_torus_in_fixed(s, opt.seed);
    const MembershipTest nt = is_in_Nsigma(diag({Complex(0.0, 1.0), Complex(0.0, -1.0)}), t, s);
    b.add("SU(2) diag(i,-i) in N", nt.member, {{"n_residual", nt.residual}});
  });
  return b.done();
}

CheckReport check_semisimplicity_gate(const CheckOptions& opt) {
  Builder b("semisimplicity", "built-in configurations and the torus shear", opt.seed);
  for (const auto& c : builtin_configurations())
    b.guarded(c.label, [&] { b.add(c.label, is_one_semisimple(c.sigma)); });
  b.guarded("shear", [&] {
    const GroupDescriptor g = make_group(FamilySpec::torus(2));
    const Automorphism shear = Automorphism::lattice(g, int2(1, 1, 0, 1));
    b.add("shear fails the kernel condition", !is_one_semisimple(shear));
    bool rejected = false;
    try {
      decide_cohomologous_Z(shear, identity(g), identity(g));
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::NotOneSemisimple;
    }
    b.add("shear rejected with NotOneSemisimple", rejected);
  });
  return b.done();
}

CheckReport check_z_action(int samples, const CheckOptions& opt) {
  Builder b("z-action", "T(2), lattice [[2,1],[1,1]] and swap", opt.seed);
  b.guarded("cat map", [&] {
    const GroupDescriptor g = make_group(FamilySpec::torus(2));
    const Automorphism s = Automorphism::lattice(g, int2(2, 1, 1, 1));
    H1Config cfg = h1_config(opt, opt.seed);
    int conjugate = 0;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const RealVector th = random_angles(2, derive_seed(opt.seed, 0x2a, i));
      const GroupElement t = make_element(g, diag({std::polar(1.0, th(0)), std::polar(1.0, th(1))}));
      const ConjugacyDecision d = decide_cohomologous_Z(s, t, identity(g), cfg);
      if (d.verdict == Verdict::Conjugate) ++conjugate;
      worst = std::max(worst, d.best_residual);
    }
    b.residual("witness", worst);
    b.add("all points conjugate to e", conjugate == samples,
          {{"conjugate", static_cast<double>(conjugate)}, {"samples", static_cast<double>(samples)}});
    const GroupElement t = make_element(g, diag({std::polar(1.0, 0.4), std::polar(1.0, 2.0)}));
    const ConjugacyDecision self = decide_cohomologous_Z(s, t, t, cfg);
    b.add("reflexive", self.verdict == Verdict::Conjugate && self.witness &&
                           (self.witness->matrix - eye(g)).norm() < 1e-12);
  });
  b.guarded("swap", [&] {
    const GroupDescriptor g = make_group(FamilySpec::torus(2));
    const Automorphism s = Automorphism::lattice(g, int2(0, 1, 1, 0));
    const GroupElement a = make_element(g, diag({std::polar(1.0, 0.3), 1.0}));
    const GroupElement c = make_element(g, diag({std::polar(1.0, 0.1), std::polar(1.0, 0.2)}));
    const ConjugacyDecision no = decide_cohomologous_Z(s, a, identity(g), h1_config(opt, opt.seed));
    const ConjugacyDecision yes = decide_cohomologous_Z(s, a, c, h1_config(opt, opt.seed));
    b.add("swap invariant separates", no.verdict == Verdict::NotConjugate && no.certificate.has_value());
    b.add("swap invariant joins", yes.verdict == Verdict::Conjugate, {{"residual", yes.best_residual}});
  });
  return b.done();
}

CheckReport check_finiteness(const Automorphism& s, int n, const std::vector<std::uint64_t>& seeds,
                             const CheckOptions& opt) {
  Builder b("finiteness", n_label(s, n), opt.seed);
  b.guarded(n_label(s, n), [&] {
    std::vector<double> orders, counts;
    bool complete = true;
    for (std::uint64_t seed : seeds) {
      const CohomologyResult r = compute_h1(s, n, h1_config(opt, seed));
      orders.push_back(static_cast<double>(r.weyl.order));
      counts.push_back(static_cast<double>(r.classes.size()));
      complete = complete && r.status == Status::Complete;
      b.add("seed " + std::to_string(seed), r.status == Status::Complete,
            {{"weyl_order", orders.back()}, {"classes", counts.back()}});
    }
    const bool same = std::adjacent_find(orders.begin(), orders.end(), std::not_equal_to<>()) == orders.end() &&
                      std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
    b.add("seed independence", same && complete);
  });
  return b.done();
}

CheckReport check_gradient(const Automorphism& s, int points, const CheckOptions& opt) {
  Builder b("gradient", s.describe() + ", points=" + std::to_string(points), opt.seed);
  b.guarded(s.describe(), [&] {
    const GroupDescriptor& g = s.group();
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
      const auto seed = derive_seed(opt.seed, 0x9d, static_cast<std::uint64_t>(i));
      const Matrix t1 = random_element(g, derive_seed(seed, 1)).matrix;
      const Matrix t2 = random_element(g, derive_seed(seed, 2)).matrix;
      const Matrix x = random_element(g, derive_seed(seed, 3)).matrix;
      const TwistedDistance f(s, t1, t2);
      const RealVector grad = f.gradient(x);
      RealVector fd(grad.size());
      for (Eigen::Index k = 0; k < grad.size(); ++k) {
        const Matrix& e = g.algebra_basis()[static_cast<std::size_t>(k)];
        fd(k) = (f.value(exp_anti_hermitian(h * e) * x) - f.value(exp_anti_hermitian(-h * e) * x)) / (2.0 * h);
      }
      const double rel = (grad - fd).norm() / std::max(fd.norm(), 1e-4);
      worst = std::max(worst, rel);
    }
    b.residual("relative_error", worst);
    b.add(s.describe(), worst <= 1e-5, {{"max_relative_error", worst}});
  });
  return b.done();
}

namespace {

int expected_count(const std::string& label, int n) {
  static const std::map<std::pair<std::string, int>, int> table{
      {{"conjugation on SU(2)", 2}, 1}, {{"identity on SU(2)", 2}, 2},  {{"identity on U(2)", 2}, 3},
      {{"conjugation on U(1)", 2}, 1},  {{"identity on U(3)", 4}, 20},  {{"identity on SO(3)", 3}, 2},
      {{"identity on SO(3)", 4}, 3},    {{"conjugation on SU(3)", 4}, 2}, {{"conjugation on U(2)", 4}, 2},
      {{"conjugation on U(3)", 2}, 1},  {{"lattice[[0,1],[1,0]] on T(2)", 2}, 1}};
  const auto it = table.find({label, n});
  return it == table.end() ? -1 : it->second;
}

bool plain_identity_or_conjugation(const Configuration& c) {
  return c.sigma.kind() != AutomorphismKind::Lattice &&
         (c.sigma.conjugator() - Matrix::Identity(c.sigma.conjugator().rows(), c.sigma.conjugator().cols())).norm() < 1e-12;
}

using SuiteFn = std::function<std::vector<CheckReport>(const CheckOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"u3-fixtures", [](const CheckOptions& o) { return std::vector<CheckReport>{check_u3_fixtures(o)}; }},
      {"main",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations())
           for (int n : c.ns) out.push_back(check_main_theorem(c.sigma, n, expected_count(c.label, n), o));
         return out;
       }},
      {"rank",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations())
           if (c.sigma.kind() != AutomorphismKind::Lattice) out.push_back(check_rank_theorem(c.sigma, 20, o));
         return out;
       }},
      {"orbit-dim",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations()) out.push_back(check_orbit_dimension_lemma(c.sigma, 100, o));
         return out;
       }},
      {"normaliser",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations())
           if (plain_identity_or_conjugation(c) || c.sigma.kind() == AutomorphismKind::Hol)
             out.push_back(check_prop32(c.sigma, maximal_torus_in_fixed(c.sigma, o.seed), o));
         return out;
       }},
      {"semisimple", [](const CheckOptions& o) { return std::vector<CheckReport>{check_semisimplicity_gate(o)}; }},
      {"z-action", [](const CheckOptions& o) { return std::vector<CheckReport>{check_z_action(100, o)}; }},
      {"generator-independence",
       [](const CheckOptions& o) {
         const GroupDescriptor u2 = make_group(FamilySpec::unitary(2));
         const GroupDescriptor su3 = make_group(FamilySpec::special_unitary(3));
         const Automorphism quarter = Automorphism::hol(u2, diag({1.0, Complex(0.0, 1.0)}));
         return std::vector<CheckReport>{
             check_generator_independence(quarter, 4, 3, o), check_generator_independence(quarter, 4, 1, o),
             check_generator_independence(Automorphism::antihol(u2, eye(u2)), 4, 3, o),
             check_generator_independence(Automorphism::antihol(su3, eye(su3)), 4, 3, o)};
       }},
      {"finiteness",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations())
           for (int n : c.ns) out.push_back(check_finiteness(c.sigma, n, {0, 1, 2}, o));
         return out;
       }},
      {"gradient",
       [](const CheckOptions& o) {
         std::vector<CheckReport> out;
         for (const auto& c : builtin_configurations()) out.push_back(check_gradient(c.sigma, 20, o));
         return out;
       }},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : suites()) v.push_back(s.first);
    v.push_back("all");
    return v;
  }();
  return names;
}

std::vector<CheckReport> run_suite(const std::string& name, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  bool found = false;
  for (const auto& [n, fn] : suites())
    if (name == "all" || name == n) {
      found = true;
      for (auto& r : fn(opt)) out.push_back(std::move(r));
    }
  if (!found) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
  return out;
}

}  // namespace twisted
