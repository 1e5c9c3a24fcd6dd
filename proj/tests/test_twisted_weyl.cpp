#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "twisted/error.hpp"
#include "twisted/twisted_weyl.hpp"

using namespace twisted;

namespace {

const Complex I(0.0, 1.0);

Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (Complex x : d) m(k, k) = x, ++k;
  return m;
}

struct Setup {
  Automorphism s;
  FixedTorus t;
  std::vector<TorsionPoint> points;
  int n;
};

Setup setup(const FamilySpec& f, bool conjugation, int n, std::uint64_t seed = 0) {
  const GroupDescriptor g = make_group(f);
  const Matrix e = Matrix::Identity(g.ambient_size(), g.ambient_size());
  Automorphism s = conjugation ? Automorphism::antihol(g, e) : Automorphism::identity(g);
  FixedTorus t = maximal_torus_in_fixed(s, seed);
  auto pts = torsion_points(t, n);
  return {s, t, pts, n};
}

Setup u3_block_torus() {
  const GroupDescriptor g = make_group(FamilySpec::unitary(3));
  const Automorphism s = Automorphism::antihol(g, Matrix::Identity(3, 3));
  Matrix h = Matrix::Zero(3, 3);
  h(0, 1) = 1.0;
  h(1, 0) = -1.0;
  const FixedTorus t = torus_from_basis(s, {h});
  return {s, t, torsion_points(t, 2), 2};
}

}  // namespace

TEST_CASE("U(3) block-torus fixtures") {
  const Setup u = u3_block_torus();
  const MembershipTest z = is_in_Zsigma(diag({1.0, 1.0, -1.0}), u.t, u.s);
  CHECK(z.member);
  CHECK(z.residual < 1e-9);
  CHECK(u.t.log(diag({1.0, 1.0, -1.0})).residual > 0.1);
  const Matrix h = diag({I, I, 1.0});
  CHECK(is_in_Nsigma(h, u.t, u.s).member);
  CHECK((u.s.apply_matrix(h) - h).norm() > 0.1);
  CHECK_FALSE(is_in_Zsigma(random_element(u.s.group(), 3).matrix, u.t, u.s).member);
}

TEST_CASE("Z is contained in N and fixed by sigma") {
  for (const Setup& u : {u3_block_torus(), setup(FamilySpec::unitary(2), false, 2), setup(FamilySpec::special_unitary(3), true, 2)}) {
    std::vector<Matrix> candidates;
    for (std::uint64_t seed = 0; seed < 20; ++seed) candidates.push_back(random_element(u.s.group(), seed).matrix);
    for (const auto& p : u.points) candidates.push_back(p.element.matrix);
    const int n = u.s.group().ambient_size();
    for (int mask = 0; mask < (1 << n); ++mask) {
      Matrix d = Matrix::Identity(n, n);
      for (int k = 0; k < n; ++k)
        if ((mask >> k) & 1) d(k, k) = -1.0;
      if (contains(u.s.group(), d).member) candidates.push_back(d);
    }
    int members = 0;
    for (const auto& c : candidates) {
      if (!is_in_Zsigma(c, u.t, u.s).member) continue;
      ++members;
      CHECK(is_in_Nsigma(c, u.t, u.s).member);
      CHECK((u.s.apply_matrix(c) - c).norm() < 1e-7);
    }
    CHECK(members >= static_cast<int>(u.points.size()));
  }
}

TEST_CASE("SU(2) with conjugation: diag(i,-i) normalises and swaps I and -I") {
  const Setup u = setup(FamilySpec::special_unitary(2), true, 2);
  const Matrix g = diag({I, -I});
  CHECK(is_in_Nsigma(g, u.t, u.s).member);
  const Permutation p = induced_permutation(g, u.t, u.s, u.points, 2);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
}

TEST_CASE("generators are valid and act on E_n(T)") {
  for (const Setup& u : {setup(FamilySpec::unitary(3), false, 3), setup(FamilySpec::unitary(3), true, 4),
                         setup(FamilySpec::special_unitary(3), false, 2), setup(FamilySpec::special_orthogonal(3), false, 4)}) {
    const auto gens = find_weyl_generators(u.s, u.t, u.points, u.n, 1);
    REQUIRE_FALSE(gens.empty());
    Permutation id(u.points.size());
    std::iota(id.begin(), id.end(), 0);
    CHECK(gens.front().permutation == id);
    for (const auto& w : gens) {
      CHECK(contains(u.s.group(), w.g.matrix).member);
      CHECK(is_in_Nsigma(w.g.matrix, u.t, u.s).member);
      std::vector<int> sorted = w.permutation;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == id);
      for (std::size_t i = 0; i < u.points.size(); ++i) {
        const Matrix img = twisted_conjugate_matrix(u.s, w.g.matrix, u.points[i].element.matrix);
        CHECK((img - u.points[static_cast<std::size_t>(w.permutation[i])].element.matrix).norm() < 1e-7);
        Matrix p = Matrix::Identity(img.rows(), img.cols());
        for (int k = 0; k < u.n; ++k) p = p * img;
        CHECK((p - Matrix::Identity(img.rows(), img.cols())).norm() < 1e-8);
      }
      // The affine action reproduces tau_g on a generic torus element.
      const RealVector th = RealVector::LinSpaced(u.t.rank, 0.3, 1.7);
      const RealVector img = w.affine.linear.cast<double>() * th + w.affine.translation;
      const Matrix direct = twisted_conjugate_matrix(u.s, w.g.matrix, u.t.element(th));
      CHECK((u.t.element(img) - direct).norm() < 1e-7);
    }
  }
}

TEST_CASE("permutation closure") {
  // S_3 acting on three points from a transposition and a 3-cycle.
  const PermutationClosure c = close_permutations({{1, 0, 2}, {1, 2, 0}}, 3);
  CHECK(c.order == 6);
  CHECK(c.orbits.size() == 1);
  const PermutationClosure d = close_permutations({{1, 0, 2, 3}}, 4);
  CHECK(d.order == 2);
  CHECK(d.orbits == std::vector<std::vector<int>>{{0, 1}, {2}, {3}});
  CHECK(d.orbit_of == std::vector<int>{0, 0, 1, 2});
  CHECK(close_permutations({}, 2).order == 1);
  CHECK_THROWS_AS(close_permutations({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, 5, 50), Error);
}

TEST_CASE("orbit partitions of the standard examples") {
  SUBCASE("SU(2), conjugation, n = 2: one orbit") {
    const Setup u = setup(FamilySpec::special_unitary(2), true, 2);
    const TwistedWeylGroup w = build_twisted_weyl(u.s, u.t, u.points, 2, 0);
    CHECK(w.saturated);
    CHECK(w.orbits.size() == 1);
  }
  SUBCASE("SU(2), identity, n = 2: central points stay apart") {
    const Setup u = setup(FamilySpec::special_unitary(2), false, 2);
    const TwistedWeylGroup w = build_twisted_weyl(u.s, u.t, u.points, 2, 0);
    CHECK(w.saturated);
    CHECK(w.orbits.size() == 2);
    CHECK(w.order == 1);
    REQUIRE(w.oracle.size() == 1);
    CHECK(w.oracle[0].decision.verdict == Verdict::NotConjugate);
  }
  SUBCASE("U(2), identity, n = 2: the transposition joins the off-central pair") {
    const Setup u = setup(FamilySpec::unitary(2), false, 2);
    const TwistedWeylGroup w = build_twisted_weyl(u.s, u.t, u.points, 2, 0);
    CHECK(w.saturated);
    CHECK(w.orbits.size() == 3);
    CHECK(w.order == 2);
    for (const auto& orbit : w.orbits) {
      const Matrix& m = u.points[static_cast<std::size_t>(orbit.front())].element.matrix;
      const bool central = (m - m(0, 0) * Matrix::Identity(2, 2)).norm() < 1e-9;
      CHECK(orbit.size() == (central ? 1u : 2u));
    }
  }
}

TEST_CASE("generator search without catalog or budget is detected as unsaturated") {
  const Setup u = setup(FamilySpec::unitary(3), false, 2, 5);
  SearchConfig none;
  none.catalog = false;
  none.budget = 0;
  const auto gens = find_weyl_generators(u.s, u.t, u.points, 2, 0, none);
  CHECK(gens.size() == 1);
  const TwistedWeylGroup w = close_and_partition(gens, u.s, u.points, 0);
  CHECK_FALSE(w.saturated);
  CHECK_FALSE(w.joined.empty());
  // The full pipeline repairs it.
  const TwistedWeylGroup full = build_twisted_weyl(u.s, u.t, u.points, 2, 0, none);
  CHECK(full.search_rounds == 2);
  CHECK(full.saturated);
  CHECK(full.orbits.size() == 4);
}

TEST_CASE("generator search is identical serially and in parallel") {
  const Setup u = setup(FamilySpec::unitary(3), true, 4);
  SearchConfig serial, parallel;
  serial.execution = Execution::Serial;
  const auto a = find_weyl_generators(u.s, u.t, u.points, 4, 2, serial);
  const auto b = find_weyl_generators(u.s, u.t, u.points, 4, 2, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].permutation == b[i].permutation);
    CHECK(a[i].g.matrix == b[i].g.matrix);
  }
}
