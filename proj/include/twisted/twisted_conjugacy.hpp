#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twisted/automorphism.hpp"
#include "twisted/parallel.hpp"

namespace twisted {

enum class Verdict { Conjugate, NotConjugate, Undecided };

const char* to_string(Verdict v);

/// Two values of a sigma-conjugacy invariant that differ. For Hol/AntiHol
/// these are eigenvalue multisets, followed by the scalar invariants when
/// there are any; for lattice automorphisms they are the
/// characters exp(i C theta) that vanish on (1 - M).
struct SpectralCertificate {
  std::vector<Complex> first;
  std::vector<Complex> second;
  double distance = 0.0;
};

struct ConjugacyDecision {
  Verdict verdict = Verdict::Undecided;
  std::optional<GroupElement> witness;
  std::optional<SpectralCertificate> certificate;
  double best_residual = 0.0;
  int restarts_used = 0;
};

struct OracleConfig {
  int restarts = 64;
  double witness_tol = 1e-7;
  int max_iterations = 500;
  double gradient_tol = 1e-12;
  double spectral_separation = 1e-4;
  /// Restarts are evaluated in fixed-size chunks; the search stops after the
  /// first chunk containing a witness. The chunk size, not the thread count,
  /// fixes which restarts run.
  int chunk = 8;
  Execution execution = Execution::Parallel;
};

/// g h sigma(g)^-1.
GroupElement twisted_conjugate(const GroupElement& g, const GroupElement& h, const Automorphism& s);
Matrix twisted_conjugate_matrix(const Automorphism& s, const Matrix& g, const Matrix& h);

/// Eigenvalues of t B (Hol) or (t B) conj(t B) (AntiHol); constant on
/// twisted orbits. Throws UnsupportedKind for lattice automorphisms.
std::vector<Complex> twisted_spectral_invariant(const GroupElement& t, const Automorphism& s);

/// Ordered scalars invariant when the twisted action is the congruence
/// M -> g M g^T on M = t B by determinant-one g: det of the symmetric part
/// and the Pfaffian of the antisymmetric part. Empty for other cases.
std::vector<Complex> twisted_scalar_invariants(const GroupElement& t, const Automorphism& s);

/// Bottleneck (optimal-matching, max-norm) distance between two multisets
/// of equal size.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

ConjugacyDecision are_sigma_conjugate(const GroupElement& t1, const GroupElement& t2, const Automorphism& s,
                                      std::uint64_t seed, const OracleConfig& config = {});

/// Rank of X -> X t - t dsigma(X), the differential of g -> tau_g(t) at e.
int orbit_dimension(const GroupElement& t, const Automorphism& s, double rel_threshold = 1e-8);

/// f(g) = |tau_g(t1) - t2|_F^2 and its closed-form gradient in algebra
/// coordinates for the left perturbation g -> exp(X) g.
class TwistedDistance {
 public:
  TwistedDistance(const Automorphism& s, const Matrix& t1, const Matrix& t2);
  double value(const Matrix& g) const;
  RealVector gradient(const Matrix& g) const;
  /// Realified residual tau_g(t1) - t2 and its Jacobian in algebra
  /// coordinates.
  RealVector residual(const Matrix& g) const;
  RealMatrix jacobian(const Matrix& g) const;

 private:
  Automorphism s_;
  Matrix t1_, t2_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> dbasis_;
};

struct DescentResult {
  Matrix g;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt on the residual, with exp steps and polar
/// retraction. Stops on a vanishing gradient, a zero residual, or when no
/// damping gives descent.
DescentResult descend(const TwistedDistance& f, const GroupDescriptor& group, const Matrix& start,
                      const OracleConfig& config);

}  // namespace twisted
