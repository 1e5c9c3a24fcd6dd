#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twisted/twisted_weyl.hpp"

namespace twisted {

struct H1Config {
  std::uint64_t seed = 0;
  /// Seed for the torus choice; defaults to `seed`.
  std::optional<std::uint64_t> torus_seed;
  /// Relative singular-value threshold of the 1-semisimplicity gate.
  double rank_threshold = 1e-8;
  SearchConfig search;
  OracleConfig oracle;
};

/// tau_g(points[from]) = points[to].
struct Witness {
  int from = 0;
  int to = 0;
  GroupElement g;
  double residual = 0.0;
};

struct Certificate {
  int first = 0;
  int second = 0;
  SpectralCertificate data;
};

struct CohomologyClass {
  int representative = 0;
  std::vector<int> members;
  /// Spanning tree of the class rooted at the representative.
  std::vector<Witness> witnesses;
};

enum class Status { Complete, Incomplete };

const char* to_string(Status s);

struct CohomologyResult {
  GroupDescriptor group;
  Automorphism automorphism;
  int n = 1;
  FixedTorus torus;
  std::vector<TorsionPoint> points;
  std::vector<CohomologyClass> classes;
  /// One per pair of class representatives.
  std::vector<Certificate> certificates;
  TwistedWeylGroup weyl;
  Status status = Status::Incomplete;
  std::vector<std::pair<int, int>> unresolved;

  int torus_rank() const { return torus.rank; }
  /// Class index of each torsion point.
  std::vector<int> partition() const;
};

struct CocycleCheck {
  bool cocycle = false;
  double residual = 0.0;
};

/// z sigma(z) ... sigma^{n-1}(z) = e.
CocycleCheck cocycle_norm_check(const GroupElement& z, const Automorphism& s, int n, double tol = 1e-8);

/// Requires order(sigma) | n and 1-semisimplicity (OrderMismatch /
/// NotOneSemisimple otherwise).
CohomologyResult compute_h1(const Automorphism& s, int n, const H1Config& config = {});

/// Same pipeline on a given torus; used to compare sigma with sigma^r on
/// one E_n(T).
CohomologyResult compute_h1_on_torus(const Automorphism& s, const FixedTorus& t, int n, const H1Config& config = {});

/// Integer action: decides whether two elements of G are twisted conjugate.
ConjugacyDecision decide_cohomologous_Z(const Automorphism& s, const GroupElement& t1, const GroupElement& t2,
                                        const H1Config& config = {});

/// H^1(Z, T^k) = T^k / (1 - sigma) T^k for a torus group: a torus of
/// dimension `dimension`. exp(i characters * theta) is a complete invariant
/// of the class of diag(exp(i theta)).
struct TorusCohomologyZ {
  int dimension = 0;
  IntMatrix characters;
};

TorusCohomologyZ torus_cohomology_Z(const Automorphism& s, double rank_threshold = 1e-8);

/// Class of an arbitrary cocycle z, decided with the oracle against the
/// class representatives; nullopt if no representative is conjugate.
std::optional<int> classify(const CohomologyResult& result, const GroupElement& z, std::uint64_t seed);

}  // namespace twisted
