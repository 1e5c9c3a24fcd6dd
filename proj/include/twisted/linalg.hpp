#pragma once

#include <vector>

#include "twisted/types.hpp"

namespace twisted {

/// Real vectorisation of a complex matrix: [Re(col-major); Im(col-major)].
RealVector realify(const Matrix& m);

/// Stacks realify(m) for each matrix as columns.
RealMatrix realify_columns(const std::vector<Matrix>& ms);

/// Numerical rank decision by relative singular-value thresholding.
///
/// The threshold is rel_threshold times max(largest singular value, 1). A
/// singular value within a factor of 10 of the threshold makes the rank
/// ambiguous; callers decide whether that is fatal.
struct RankDecision {
  int rank = 0;
  double threshold = 0.0;
  bool ambiguous = false;
  RealVector singular_values;
  RealMatrix nullspace;  ///< orthonormal columns spanning the numerical kernel
};

RankDecision decide_rank(const RealMatrix& a, double rel_threshold = 1e-8);

/// Throws IllConditioned if the decision is ambiguous.
RankDecision decide_rank_strict(const RealMatrix& a, double rel_threshold, const char* context);

double frobenius(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace twisted
