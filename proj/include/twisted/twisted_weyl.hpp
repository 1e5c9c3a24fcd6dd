#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twisted/fixed_torus.hpp"
#include "twisted/twisted_conjugacy.hpp"

namespace twisted {

struct MembershipTest {
  bool member = false;
  double residual = 0.0;
};

/// g t sigma(g)^-1 = t for all t in T, tested at exp(s H_i) for s in
/// {1, 1/phi}, together with sigma(g) = g.
MembershipTest is_in_Zsigma(const Matrix& g, const FixedTorus& t, const Automorphism& s, double tol = 1e-7);

/// g sigma(g)^-1 in T and Ad(g) t = t.
MembershipTest is_in_Nsigma(const Matrix& g, const FixedTorus& t, const Automorphism& s, double tol = 1e-7);

using Permutation = std::vector<int>;

/// theta -> linear * theta + translation, the action t -> tau_g(t) in torus
/// coordinates (angles in radians).
struct AffineAction {
  IntMatrix linear;
  RealVector translation;
};

AffineAction affine_action(const Matrix& g, const FixedTorus& t, const Automorphism& s);

/// Induced map on torsion point indices, or empty if some image is not
/// found among the points.
Permutation induced_permutation(const Matrix& g, const FixedTorus& t, const Automorphism& s,
                                const std::vector<TorsionPoint>& points, int n);

struct WeylGenerator {
  GroupElement g;
  Permutation permutation;
  AffineAction affine;
  std::string origin;  ///< "catalog", "search" or "targeted"
};

struct SearchConfig {
  int budget = 64;
  int max_iterations = 100;
  double accept = 1e-12;
  double membership_tol = 1e-7;
  bool catalog = true;
  Execution execution = Execution::Parallel;
};

/// Catalog of structured matrices followed by seeded Levenberg-Marquardt
/// restarts on the normaliser equations. Generators are deduplicated by
/// induced permutation; the identity is always first.
std::vector<WeylGenerator> find_weyl_generators(const Automorphism& s, const FixedTorus& t,
                                                const std::vector<TorsionPoint>& points, int n, std::uint64_t seed,
                                                const SearchConfig& config = {});

/// Restarts that additionally require tau_y(points[a]) = points[b] for each
/// requested pair; each pair is seeded from `starts` when given.
std::vector<WeylGenerator> targeted_generators(const Automorphism& s, const FixedTorus& t,
                                               const std::vector<TorsionPoint>& points, int n,
                                               const std::vector<std::pair<int, int>>& pairs,
                                               const std::vector<Matrix>& starts, std::uint64_t seed,
                                               const SearchConfig& config = {});

struct PermutationClosure {
  std::size_t order = 1;
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;
};

/// Breadth-first closure of the generated permutation group and its orbits.
/// Throws ClosureExplosion if the order exceeds `cap`.
PermutationClosure close_permutations(const std::vector<Permutation>& generators, std::size_t size,
                                      std::size_t cap = 1000000);

struct OracleRecord {
  int first = 0;
  int second = 0;
  ConjugacyDecision decision;
};

struct TwistedWeylGroup {
  std::vector<WeylGenerator> generators;
  std::size_t order = 1;
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;
  bool saturated = false;
  /// Oracle decisions on all pairs of orbit representatives.
  std::vector<OracleRecord> oracle;
  /// Representative pairs the oracle left Undecided.
  std::vector<std::pair<int, int>> unresolved;
  /// Representative pairs the oracle found conjugate although the
  /// generators keep them in different orbits.
  std::vector<std::pair<int, int>> joined;
  int search_rounds = 1;
};

TwistedWeylGroup close_and_partition(const std::vector<WeylGenerator>& generators, const Automorphism& s,
                                     const std::vector<TorsionPoint>& points, std::uint64_t seed,
                                     const OracleConfig& oracle = {});

/// Search, closure and oracle cross-check. If the oracle joins two orbits
/// the search runs once more with doubled budget plus restarts aimed at the
/// joined pairs.
TwistedWeylGroup build_twisted_weyl(const Automorphism& s, const FixedTorus& t,
                                    const std::vector<TorsionPoint>& points, int n, std::uint64_t seed,
                                    const SearchConfig& search = {}, const OracleConfig& oracle = {});

}  // namespace twisted
