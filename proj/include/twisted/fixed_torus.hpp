#pragma once

#include <cstdint>
#include <vector>

#include "twisted/automorphism.hpp"
#include "twisted/integer_lattice.hpp"

namespace twisted {

struct TorusLog {
  RealVector theta;  ///< coordinates in [0, 2pi)
  double residual = 0.0;
};

/// A maximal torus T of the identity component of the fixed group, in a
/// basis H_1..H_r normalised so that exp(sum theta_j H_j) = e exactly when
/// theta is in 2 pi Z^r.
struct FixedTorus {
  GroupDescriptor group;
  std::vector<AlgebraElement> t_basis;
  int rank = 0;
  /// N x r; the eigenvalue of sum theta_j H_j on eigenbasis column k is
  /// i (weight_matrix * theta)_k.
  IntMatrix weight_matrix;
  /// r x r; columns span the exponential lattice in units of 2 pi.
  IntMatrix lattice_basis;
  /// Joint eigenbasis of the H_j.
  Matrix eigenbasis;
  /// r x N with log_inverse * weight_matrix = I.
  IntMatrix log_inverse;
  /// Frobenius-orthonormal basis of t.
  std::vector<Matrix> orthonormal_basis;

  Matrix element(const RealVector& theta) const;
  Matrix algebra(const RealVector& theta) const;
  /// Torus coordinates of x and the distance from x to the torus element
  /// they define. Exact for x in T; no branch cut because log_inverse is
  /// integral.
  TorusLog log(const Matrix& x) const;
  /// Component of y orthogonal to t (Frobenius inner product).
  Matrix project_out(const Matrix& y) const;
  /// Coordinates of y's projection onto t in the t_basis.
  RealVector t_coordinates(const Matrix& y) const;
};

struct TorsionPoint {
  std::vector<std::int64_t> numerators;  ///< coordinates numerators / denominator, in units of 2 pi
  std::int64_t denominator = 1;
  GroupElement element;
};

/// Basis of ker(1 - dsigma). Throws NotOneSemisimple / IllConditioned.
std::vector<AlgebraElement> fixed_subalgebra(const Automorphism& s, double rel_threshold = 1e-8);

/// Torus through a generic centraliser in the fixed subalgebra; retries up
/// to 10 draws, then GenericityFailure.
FixedTorus maximal_torus_in_fixed(const Automorphism& s, std::uint64_t seed);

/// Rank only, without the lattice computation.
int fixed_torus_rank(const Automorphism& s, std::uint64_t seed);

/// Validates a caller-supplied basis of a maximal torus of the fixed group
/// (commuting, fixed, maximal) and normalises it.
FixedTorus torus_from_basis(const Automorphism& s, const std::vector<Matrix>& basis, std::uint64_t seed = 0);

struct ExponentialLattice {
  std::vector<Matrix> basis;  ///< reduced basis, lattice = 2 pi Z^r
  IntMatrix weight_matrix;
  IntMatrix lattice_basis;
  IntMatrix log_inverse;
  Matrix eigenbasis;
  IntMatrix raw_weights;      ///< integral weights before lattice reduction
  IntVector elementary_divisors;
};

/// Joint diagonalisation, rational weight reconstruction (denominators up
/// to 1e6, tolerance 1e-6) and Smith normal form.
ExponentialLattice exponential_lattice(const GroupDescriptor& g, const std::vector<Matrix>& commuting_basis,
                                       std::uint64_t seed = 0);

/// (1/n) Lambda / Lambda, n^rank points in lexicographic order of
/// numerators. Throws EnumerationTooLarge beyond 1e6 points.
std::vector<TorsionPoint> torsion_points(const FixedTorus& t, int n);

/// Index of x in torsion_points(t, n) or -1 if x is not an n-torsion point.
int torsion_index(const FixedTorus& t, int n, const Matrix& x, double tol = 1e-7);

}  // namespace twisted
