#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twisted/error.hpp"
#include "twisted/fixed_torus.hpp"
#include "twisted/twisted_conjugacy.hpp"

using namespace twisted;

namespace {

const Complex I(0.0, 1.0);

Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (Complex x : d) m(k, k) = x, ++k;
  return m;
}

IntMatrix int2(int a, int b, int c, int d) {
  IntMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<Automorphism> sample_automorphisms() {
  std::vector<Automorphism> out;
  for (const FamilySpec& f : {FamilySpec::unitary(2), FamilySpec::special_unitary(3), FamilySpec::special_orthogonal(3)}) {
    const GroupDescriptor g = make_group(f);
    const Matrix e = Matrix::Identity(g.ambient_size(), g.ambient_size());
    out.push_back(Automorphism::identity(g));
    out.push_back(Automorphism::antihol(g, e));
    out.push_back(Automorphism::hol(g, random_element(g, 77).matrix));
  }
  const GroupDescriptor t2 = make_group(FamilySpec::torus(2));
  out.push_back(Automorphism::lattice(t2, int2(0, 1, 1, 0)));
  out.push_back(Automorphism::lattice(t2, int2(2, 1, 1, 1)));
  return out;
}

}  // namespace

TEST_CASE("twisted action composes: tau_gh = tau_g o tau_h") {
  for (const auto& s : sample_automorphisms()) {
    const GroupDescriptor& g = s.group();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const GroupElement a = random_element(g, seed), b = random_element(g, seed + 1000), t = random_element(g, seed + 2000);
      const Matrix lhs = twisted_conjugate(multiply(a, b), t, s).matrix;
      const Matrix rhs = twisted_conjugate(a, twisted_conjugate(b, t, s), s).matrix;
      CHECK((lhs - rhs).norm() < 1e-9);
    }
  }
}

TEST_CASE("spectral invariant is transported exactly") {
  for (const auto& s : sample_automorphisms()) {
    if (s.kind() == AutomorphismKind::Lattice) continue;
    const GroupDescriptor& g = s.group();
    const GroupElement t = random_element(g, 5);
    const auto base = twisted_spectral_invariant(t, s);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto moved = twisted_spectral_invariant(twisted_conjugate(random_element(g, seed), t, s), s);
      CHECK(multiset_distance(base, moved) < 1e-8);
    }
  }
}

TEST_CASE("scalar invariants are transported exactly") {
  const std::vector<Automorphism> cases = {
      Automorphism::antihol(make_group(FamilySpec::special_unitary(2)), Matrix::Identity(2, 2)),
      Automorphism::antihol(make_group(FamilySpec::special_unitary(4)), Matrix::Identity(4, 4)),
      Automorphism::identity(make_group(FamilySpec::special_orthogonal(4))),
  };
  for (const auto& s : cases) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GroupElement t = random_element(s.group(), seed), g = random_element(s.group(), seed + 500);
      const auto a = twisted_scalar_invariants(t, s), b = twisted_scalar_invariants(twisted_conjugate(g, t, s), s);
      REQUIRE(a.size() == 2);
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9);
    }
  }
  CHECK(twisted_scalar_invariants(identity(make_group(FamilySpec::unitary(2))),
                                  Automorphism::identity(make_group(FamilySpec::unitary(2))))
            .empty());
  // J and -J: equal spectral data, opposite Pfaffians.
  const GroupDescriptor su2 = make_group(FamilySpec::special_unitary(2));
  const Automorphism c = Automorphism::antihol(su2, Matrix::Identity(2, 2));
  Matrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  const GroupElement a = make_element(su2, j), b = make_element(su2, -j);
  CHECK(multiset_distance(twisted_spectral_invariant(a, c), twisted_spectral_invariant(b, c)) < 1e-12);
  const ConjugacyDecision d = are_sigma_conjugate(a, b, c, 0);
  CHECK(d.verdict == Verdict::NotConjugate);
  CHECK(d.restarts_used == 0);
}

TEST_CASE("multiset distance is the optimal bottleneck matching") {
  const std::vector<Complex> a{1.0, -1.0, I}, b{I, 1.0, -1.0};
  CHECK(multiset_distance(a, b) == 0.0);
  const std::vector<Complex> c{1.0, 1.0}, d{1.0, -1.0};
  CHECK(multiset_distance(c, d) == doctest::Approx(2.0));
  // Greedy nearest matching would pair 0 with 0.1 and leave 1 for -1.
  const std::vector<Complex> e{0.0, 1.0}, f{0.1, -1.0};
  CHECK(multiset_distance(e, f) == doctest::Approx(1.0));
  CHECK_THROWS_AS(multiset_distance(a, c), Error);
}

TEST_CASE("closed-form gradient matches central differences") {
  for (const auto& s : sample_automorphisms()) {
    const GroupDescriptor& g = s.group();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const TwistedDistance f(s, random_element(g, seed).matrix, random_element(g, seed + 1).matrix);
      const Matrix x = random_element(g, seed + 2).matrix;
      const RealVector grad = f.gradient(x);
      RealVector fd(grad.size());
      const double h = 1e-5;
      for (Eigen::Index k = 0; k < grad.size(); ++k) {
        const Matrix& e = g.algebra_basis()[static_cast<std::size_t>(k)];
        fd(k) = (f.value(exp_anti_hermitian(h * e) * x) - f.value(exp_anti_hermitian(-h * e) * x)) / (2 * h);
      }
      CHECK((grad - fd).norm() <= 1e-5 * std::max(fd.norm(), 1e-8));
      // The Jacobian is consistent with the gradient.
      CHECK((2.0 * f.jacobian(x).transpose() * f.residual(x) - grad).norm() < 1e-10 * std::max(1.0, grad.norm()));
    }
  }
}

TEST_CASE("oracle examples") {
  const GroupDescriptor su2 = make_group(FamilySpec::special_unitary(2));
  const GroupElement e = identity(su2);
  const GroupElement m = make_element(su2, -Matrix::Identity(2, 2));

  SUBCASE("conjugation joins I and -I") {
    const Automorphism s = Automorphism::antihol(su2, Matrix::Identity(2, 2));
    const ConjugacyDecision d = are_sigma_conjugate(e, m, s, 0);
    REQUIRE(d.verdict == Verdict::Conjugate);
    CHECK((twisted_conjugate(*d.witness, e, s).matrix - m.matrix).norm() <= 1e-7);
    CHECK(d.best_residual <= 1e-7);
  }
  SUBCASE("identity separates I and -I with a spectral certificate") {
    const ConjugacyDecision d = are_sigma_conjugate(e, m, Automorphism::identity(su2), 0);
    CHECK(d.verdict == Verdict::NotConjugate);
    REQUIRE(d.certificate.has_value());
    CHECK(d.certificate->distance == doctest::Approx(2.0));
  }
  SUBCASE("reflexivity uses the identity restart") {
    const GroupElement t = random_element(su2, 4);
    const ConjugacyDecision d = are_sigma_conjugate(t, t, Automorphism::identity(su2), 0);
    CHECK(d.verdict == Verdict::Conjugate);
    CHECK(d.best_residual == 0.0);
  }
  SUBCASE("Weyl reflection") {
    const GroupElement a = make_element(su2, diag({I, -I}));
    const GroupElement b = make_element(su2, diag({-I, I}));
    CHECK(are_sigma_conjugate(a, b, Automorphism::identity(su2), 1).verdict == Verdict::Conjugate);
  }
  SUBCASE("group mismatch") {
    const GroupDescriptor u2 = make_group(FamilySpec::unitary(2));
    CHECK_THROWS_AS(are_sigma_conjugate(identity(u2), e, Automorphism::identity(su2), 0), Error);
  }
}

TEST_CASE("random transports are recovered for every kind") {
  for (const auto& s : sample_automorphisms()) {
    const GroupDescriptor& g = s.group();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const GroupElement t = random_element(g, seed + 40);
      const GroupElement u = twisted_conjugate(random_element(g, seed + 80), t, s);
      const ConjugacyDecision d = are_sigma_conjugate(t, u, s, seed);
      CHECK(d.verdict == Verdict::Conjugate);
      if (d.witness) CHECK((twisted_conjugate(*d.witness, t, s).matrix - u.matrix).norm() <= 1e-7);
    }
  }
}

TEST_CASE("lattice decisions are exact") {
  const GroupDescriptor t2 = make_group(FamilySpec::torus(2));
  const Automorphism cat = Automorphism::lattice(t2, int2(2, 1, 1, 1));
  const Automorphism swap = Automorphism::lattice(t2, int2(0, 1, 1, 0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const GroupElement t = make_element(t2, diag({std::polar(1.0, u(rng)), std::polar(1.0, u(rng))}));
    const ConjugacyDecision d = are_sigma_conjugate(t, identity(t2), cat, 0);
    CHECK(d.verdict == Verdict::Conjugate);
    CHECK(d.restarts_used == 0);
    // Under the swap, exp(i(theta_1 + theta_2)) is the complete invariant.
    const double a = u(rng), b = u(rng), c = u(rng);
    const GroupElement x = make_element(t2, diag({std::polar(1.0, a), std::polar(1.0, b)}));
    const GroupElement y = make_element(t2, diag({std::polar(1.0, c), std::polar(1.0, a + b - c)}));
    const GroupElement z = make_element(t2, diag({std::polar(1.0, c), std::polar(1.0, a + b - c + 0.5)}));
    CHECK(are_sigma_conjugate(x, y, swap, 0).verdict == Verdict::Conjugate);
    const ConjugacyDecision no = are_sigma_conjugate(x, z, swap, 0);
    CHECK(no.verdict == Verdict::NotConjugate);
    REQUIRE(no.certificate.has_value());
    CHECK(no.certificate->distance > 0.1);
  }
}

TEST_CASE("orbit dimension examples") {
  const GroupDescriptor u1 = make_group(FamilySpec::unitary(1));
  CHECK(orbit_dimension(identity(u1), Automorphism::antihol(u1, Matrix::Identity(1, 1))) == 1);
  CHECK(orbit_dimension(identity(u1), Automorphism::identity(u1)) == 0);
  const GroupDescriptor su2 = make_group(FamilySpec::special_unitary(2));
  CHECK(orbit_dimension(identity(su2), Automorphism::identity(su2)) == 0);
  CHECK(orbit_dimension(random_element(su2, 3), Automorphism::identity(su2)) == 2);
  const GroupDescriptor t2 = make_group(FamilySpec::torus(2));
  CHECK(orbit_dimension(identity(t2), Automorphism::lattice(t2, int2(2, 1, 1, 1))) == 2);
}

TEST_CASE("serial and parallel restarts give identical results") {
  const GroupDescriptor u3 = make_group(FamilySpec::unitary(3));
  const Automorphism s = Automorphism::antihol(u3, Matrix::Identity(3, 3));
  const GroupElement t = random_element(u3, 1);
  const GroupElement u = twisted_conjugate(random_element(u3, 2), t, s);
  OracleConfig serial, parallel;
  serial.execution = Execution::Serial;
  for (double tol : {1e-7, 1e-30}) {
    serial.witness_tol = parallel.witness_tol = tol;
    serial.restarts = parallel.restarts = 24;
    const ConjugacyDecision a = are_sigma_conjugate(t, u, s, 9, serial);
    const ConjugacyDecision b = are_sigma_conjugate(t, u, s, 9, parallel);
    CHECK(a.verdict == b.verdict);
    CHECK(a.best_residual == b.best_residual);
    CHECK(a.restarts_used == b.restarts_used);
    if (a.witness && b.witness) CHECK(a.witness->matrix == b.witness->matrix);
  }
}

TEST_CASE("undecided when restarts cannot reach the tolerance") {
  const GroupDescriptor u3 = make_group(FamilySpec::unitary(3));
  const Automorphism s = Automorphism::identity(u3);
  const GroupElement t = random_element(u3, 1);
  const GroupElement u = twisted_conjugate(random_element(u3, 2), t, s);
  OracleConfig cfg;
  cfg.witness_tol = 1e-30;
  cfg.restarts = 8;
  const ConjugacyDecision d = are_sigma_conjugate(t, u, s, 0, cfg);
  CHECK(d.verdict == Verdict::Undecided);
  CHECK_FALSE(d.witness.has_value());
  CHECK(d.restarts_used == 8);
}
