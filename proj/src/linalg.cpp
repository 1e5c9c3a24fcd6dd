#include "twisted/linalg.hpp"

#include <algorithm>
#include <string>

#include "twisted/error.hpp"

namespace twisted {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ProjectionFailed: return "ProjectionFailed";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::DifferentialNotInAlgebra: return "DifferentialNotInAlgebra";
    case ErrorKind::OrderUndetermined: return "OrderUndetermined";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::WeightReconstructionFailed: return "WeightReconstructionFailed";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::ClosureExplosion: return "ClosureExplosion";
    case ErrorKind::NotOneSemisimple: return "NotOneSemisimple";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

RealVector realify(const Matrix& m) {
  const Eigen::Index n = m.size();
  RealVector v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = m.data()[k].real();
    v(n + k) = m.data()[k].imag();
  }
  return v;
}

RealMatrix realify_columns(const std::vector<Matrix>& ms) {
  if (ms.empty()) return RealMatrix(0, 0);
  RealMatrix out(2 * ms.front().size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t j = 0; j < ms.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = realify(ms[j]);
  return out;
}

RankDecision decide_rank(const RealMatrix& a, double rel_threshold) {
  RankDecision out;
  const Eigen::Index cols = a.cols();
  if (cols == 0) {
    out.nullspace = RealMatrix(0, 0);
    return out;
  }
  if (a.rows() == 0) {
    out.nullspace = RealMatrix::Identity(cols, cols);
    return out;
  }
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double largest = out.singular_values.size() ? out.singular_values(0) : 0.0;
  // The maps thresholded here have natural scale 1; the floor stops pure
  // rounding noise from being read as full rank.
  out.threshold = rel_threshold * std::max(largest, 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values(i);
    if (s > out.threshold) ++rank;
    if (s > out.threshold / 10.0 && s < out.threshold * 10.0) out.ambiguous = true;
  }
  out.rank = rank;
  out.nullspace = svd.matrixV().rightCols(cols - rank);
  return out;
}

RankDecision decide_rank_strict(const RealMatrix& a, double rel_threshold, const char* context) {
  RankDecision d = decide_rank(a, rel_threshold);
  if (d.ambiguous)
    throw Error(ErrorKind::IllConditioned,
                std::string(context) + ": singular value within a factor 10 of the rank threshold");
  return d;
}

double frobenius(const Matrix& m) { return m.norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace twisted
