#include "twisted/fixed_torus.hpp"

#include <cmath>
#include <sstream>

#include "twisted/error.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

namespace {

constexpr int kGenericRetries = 10;
constexpr std::int64_t kMaxDenominator = 1000000;
constexpr double kRationalTol = 1e-6;

std::vector<Matrix> fixed_matrices(const Automorphism& s, double rel) {
  std::vector<Matrix> out;
  for (const auto& a : fixed_subalgebra(s, rel)) out.push_back(a.matrix);
  return out;
}

// c -> realify(sum_i [A_i, sum_j c_j F_j]) stacked over i.
RealMatrix centraliser_map(const std::vector<Matrix>& as, const std::vector<Matrix>& fs) {
  if (fs.empty() || as.empty()) return RealMatrix(0, static_cast<Eigen::Index>(fs.size()));
  const Eigen::Index block = 2 * fs.front().size();
  RealMatrix m(block * static_cast<Eigen::Index>(as.size()), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      m.block(block * static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), block, 1) =
          realify(commutator(as[i], fs[j]));
  return m;
}

Matrix combine(const std::vector<Matrix>& fs, const RealVector& c, int n) {
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < fs.size(); ++j) m += c(static_cast<Eigen::Index>(j)) * fs[j];
  return m;
}

struct Centraliser {
  std::vector<Matrix> basis;
  bool ok = false;
};

Centraliser generic_centraliser(const std::vector<Matrix>& fs, int n, std::uint64_t seed, int attempt) {
  Centraliser out;
  RealVector a(static_cast<Eigen::Index>(fs.size()));
  Rng rng(derive_seed(seed, 0xce47, static_cast<std::uint64_t>(attempt)));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index j = 0; j < a.size(); ++j) a(j) = normal(rng);
  const Matrix x = combine(fs, a, n);
  const RankDecision d = decide_rank(centraliser_map({x}, fs), 1e-8);
  if (d.ambiguous) return out;
  for (Eigen::Index k = 0; k < d.nullspace.cols(); ++k) out.basis.push_back(combine(fs, d.nullspace.col(k), n));
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = i + 1; j < out.basis.size(); ++j)
      if (commutator(out.basis[i], out.basis[j]).norm() > 1e-10) return out;
  out.ok = true;
  return out;
}

std::vector<Matrix> frobenius_orthonormalise(const std::vector<Matrix>& ms) {
  std::vector<Matrix> q;
  for (const auto& m : ms) {
    Matrix v = m;
    for (const auto& e : q) v -= (e.adjoint() * v).trace().real() * e;
    for (const auto& e : q) v -= (e.adjoint() * v).trace().real() * e;
    const double nv = v.norm();
    if (nv > 1e-12) q.push_back(v / nv);
  }
  return q;
}

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  if (y >= kTwoPi) y -= kTwoPi;
  return y;
}

}  // namespace

std::vector<AlgebraElement> fixed_subalgebra(const Automorphism& s, double rel_threshold) {
  if (!is_one_semisimple(s, rel_threshold))
    throw Error(ErrorKind::NotOneSemisimple, "ker(1 - dsigma) != ker((1 - dsigma)^2)");
  const GroupDescriptor& g = s.group();
  const RealMatrix ds = differential(s);
  const RankDecision d =
      decide_rank_strict(RealMatrix::Identity(g.dim(), g.dim()) - ds, rel_threshold, "fixed subalgebra");
  std::vector<AlgebraElement> out;
  for (Eigen::Index k = 0; k < d.nullspace.cols(); ++k) out.push_back(algebra_element(g, d.nullspace.col(k)));
  return out;
}

int fixed_torus_rank(const Automorphism& s, std::uint64_t seed) {
  const auto fs = fixed_matrices(s, 1e-8);
  if (fs.empty()) return 0;
  for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
    const Centraliser c = generic_centraliser(fs, s.group().ambient_size(), seed, attempt);
    if (c.ok) return static_cast<int>(c.basis.size());
  }
  throw Error(ErrorKind::GenericityFailure, "no generic element found in the fixed subalgebra");
}

FixedTorus maximal_torus_in_fixed(const Automorphism& s, std::uint64_t seed) {
  const auto fs = fixed_matrices(s, 1e-8);
  if (fs.empty()) return torus_from_basis(s, {}, seed);
  for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
    const Centraliser c = generic_centraliser(fs, s.group().ambient_size(), seed, attempt);
    if (!c.ok) continue;
    try {
      return torus_from_basis(s, c.basis, seed);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GenericityFailure) throw;
    }
  }
  throw Error(ErrorKind::GenericityFailure, "no generic element found in the fixed subalgebra");
}

FixedTorus torus_from_basis(const Automorphism& s, const std::vector<Matrix>& basis, std::uint64_t seed) {
  const GroupDescriptor& g = s.group();
  const int n = g.ambient_size();
  for (const auto& h : basis) {
    if (h.rows() != n || h.cols() != n) throw Error(ErrorKind::DimensionMismatch, "torus basis matrix size");
    const double scale = std::max(1.0, h.norm());
    if (g.span_residual(h) > 1e-9 * scale) throw Error(ErrorKind::InvalidArgument, "torus basis is not in the algebra");
    if ((s.apply_algebra(h) - h).norm() > 1e-9 * scale)
      throw Error(ErrorKind::InvalidArgument, "torus basis is not fixed by dsigma");
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (commutator(basis[i], basis[j]).norm() > 1e-10 * std::max(1.0, basis[i].norm() * basis[j].norm()))
        throw Error(ErrorKind::InvalidArgument, "torus basis does not commute");
  const auto fs = fixed_matrices(s, 1e-8);
  if (frobenius_orthonormalise(basis).size() != basis.size())
    throw Error(ErrorKind::InvalidArgument, "torus basis is linearly dependent");
  if (!basis.empty()) {
    const RankDecision d = decide_rank(centraliser_map(basis, fs), 1e-8);
    if (d.nullspace.cols() != static_cast<Eigen::Index>(basis.size()))
      throw Error(ErrorKind::InvalidArgument, "torus is not maximal in the fixed subalgebra");
  } else if (!fs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty torus but the fixed subalgebra is nonzero");
  }

  const ExponentialLattice lat = exponential_lattice(g, basis, seed);
  FixedTorus t;
  t.group = g;
  t.rank = static_cast<int>(lat.basis.size());
  for (const auto& h : lat.basis) t.t_basis.push_back(AlgebraElement{g.coordinates(h), h});
  t.weight_matrix = lat.weight_matrix;
  t.lattice_basis = lat.lattice_basis;
  t.log_inverse = lat.log_inverse;
  t.eigenbasis = lat.eigenbasis;
  t.orthonormal_basis = frobenius_orthonormalise(lat.basis);
  return t;
}

ExponentialLattice exponential_lattice(const GroupDescriptor& g, const std::vector<Matrix>& hs, std::uint64_t seed) {
  const int n = g.ambient_size();
  const int r = static_cast<int>(hs.size());
  ExponentialLattice out;
  out.lattice_basis = IntMatrix::Identity(r, r);
  if (r == 0) {
    out.weight_matrix = IntMatrix(n, 0);
    out.raw_weights = IntMatrix(n, 0);
    out.log_inverse = IntMatrix(0, n);
    out.eigenbasis = Matrix::Identity(n, n);
    out.elementary_divisors = IntVector(0);
    return out;
  }

  // Joint eigenbasis from a generic combination.
  Matrix u;
  RealMatrix w(n, r);
  bool diagonalised = false;
  for (int attempt = 0; attempt < kGenericRetries && !diagonalised; ++attempt) {
    Rng rng(derive_seed(seed, 0xd1a6, static_cast<std::uint64_t>(attempt)));
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x = Matrix::Zero(n, n);
    for (const auto& h : hs) x += normal(rng) * h;
    const Matrix herm = Complex(0.0, 1.0) * x;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (herm + herm.adjoint()));
    u = es.eigenvectors();
    diagonalised = true;
    for (int i = 0; i < r; ++i) {
      Matrix d = u.adjoint() * hs[static_cast<std::size_t>(i)] * u;
      for (int k = 0; k < n; ++k) w(k, i) = d(k, k).imag();
      d.diagonal().setZero();
      if (d.norm() > 1e-8 * std::max(1.0, hs[static_cast<std::size_t>(i)].norm())) diagonalised = false;
    }
  }
  if (!diagonalised) throw Error(ErrorKind::GenericityFailure, "joint diagonalisation of the torus basis failed");

  // r well-conditioned weight rows become the reference coordinates.
  Eigen::ColPivHouseholderQR<RealMatrix> qr(w.transpose());
  if (qr.rank() < r) throw Error(ErrorKind::WeightReconstructionFailed, "weights do not span the torus dual");
  std::vector<int> rows;
  for (int i = 0; i < r; ++i) rows.push_back(static_cast<int>(qr.colsPermutation().indices()(i)));
  RealMatrix p(r, r);
  for (int i = 0; i < r; ++i) p.row(i) = w.row(rows[static_cast<std::size_t>(i)]);
  const RealMatrix pinv = p.inverse();
  const RealMatrix q = w * pinv;

  std::vector<Rational> rat(static_cast<std::size_t>(n * r));
  std::int64_t den = 1;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < r; ++j) {
      const auto v = reconstruct_rational(q(k, j), kMaxDenominator, kRationalTol);
      if (!v) {
        std::ostringstream os;
        os << "weight ratio " << q(k, j) << " is not a small-denominator rational";
        throw Error(ErrorKind::WeightReconstructionFailed, os.str());
      }
      rat[static_cast<std::size_t>(k * r + j)] = *v;
      den = lcm64(den, v->den);
    }
  IntMatrix wint(n, r);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < r; ++j) {
      const Rational& v = rat[static_cast<std::size_t>(k * r + j)];
      wint(k, j) = checked_mul(v.num, den / v.den);
    }
  out.raw_weights = wint;

  // exp(sum theta_j F_j) = e  iff  wint theta in 2 pi Z^n, with F = H (den P^-1).
  const SmithForm snf = smith_normal_form(wint);
  if (snf.rank != r) throw Error(ErrorKind::WeightReconstructionFailed, "integral weight matrix lost rank");
  out.elementary_divisors = snf.diag.diagonal().head(r);
  const IntMatrix wr = int_multiply(wint, snf.right);
  IntMatrix reduced(n, r);
  for (int j = 0; j < r; ++j) {
    const std::int64_t sj = snf.diag(j, j);
    for (int k = 0; k < n; ++k) {
      if (wr(k, j) % sj != 0) throw Error(ErrorKind::WeightReconstructionFailed, "Smith form inconsistency");
      reduced(k, j) = wr(k, j) / sj;
    }
  }
  out.weight_matrix = reduced;
  out.log_inverse = snf.left.topRows(r);

  RealMatrix coeff = static_cast<double>(den) * pinv * snf.right.cast<double>();
  for (int j = 0; j < r; ++j) coeff.col(j) /= static_cast<double>(snf.diag(j, j));
  for (int m = 0; m < r; ++m) {
    Matrix h = Matrix::Zero(n, n);
    for (int i = 0; i < r; ++i) h += coeff(i, m) * hs[static_cast<std::size_t>(i)];
    out.basis.push_back(h);
  }
  // The reduced basis must have exactly the integral weights claimed.
  for (int m = 0; m < r; ++m) {
    const Matrix d = u.adjoint() * out.basis[static_cast<std::size_t>(m)] * u;
    for (int k = 0; k < n; ++k)
      if (std::abs(d(k, k) - Complex(0.0, static_cast<double>(reduced(k, m)))) > 1e-6)
        throw Error(ErrorKind::WeightReconstructionFailed, "reduced basis weights are not integral");
  }
  out.eigenbasis = u;
  return out;
}

Matrix FixedTorus::algebra(const RealVector& theta) const {
  const int n = group.ambient_size();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < rank; ++j) m += theta(j) * t_basis[static_cast<std::size_t>(j)].matrix;
  return m;
}

Matrix FixedTorus::element(const RealVector& theta) const {
  const int n = group.ambient_size();
  const RealVector phases = weight_matrix.cast<double>() * theta;
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, rank ? phases(k) : 0.0);
  return eigenbasis * d.asDiagonal() * eigenbasis.adjoint();
}

TorusLog FixedTorus::log(const Matrix& x) const {
  const int n = group.ambient_size();
  const Matrix y = eigenbasis.adjoint() * x * eigenbasis;
  RealVector phi(n);
  for (int k = 0; k < n; ++k) phi(k) = std::arg(y(k, k));
  TorusLog out;
  out.theta = RealVector(rank);
  if (rank > 0) {
    out.theta = log_inverse.cast<double>() * phi;
    for (int j = 0; j < rank; ++j) out.theta(j) = wrap_angle(out.theta(j));
  }
  out.residual = (x - element(out.theta)).norm();
  return out;
}

Matrix FixedTorus::project_out(const Matrix& y) const {
  Matrix v = y;
  for (const auto& e : orthonormal_basis) v -= (e.adjoint() * y).trace().real() * e;
  return v;
}

RealVector FixedTorus::t_coordinates(const Matrix& y) const {
  // Least squares against the (non-orthonormal) t_basis.
  if (rank == 0) return RealVector(0);
  std::vector<Matrix> hs;
  for (const auto& h : t_basis) hs.push_back(h.matrix);
  const RealMatrix a = realify_columns(hs);
  return a.colPivHouseholderQr().solve(realify(y));
}

std::vector<TorsionPoint> torsion_points(const FixedTorus& t, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "torsion order must be >= 1");
  double count = std::pow(static_cast<double>(n), t.rank);
  if (count > 1e6) throw Error(ErrorKind::EnumerationTooLarge, "n^rank exceeds 1e6");
  const auto total = static_cast<std::int64_t>(std::llround(count));
  std::vector<TorsionPoint> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> a(static_cast<std::size_t>(t.rank), 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rem = idx;
    for (int j = t.rank - 1; j >= 0; --j) {
      a[static_cast<std::size_t>(j)] = rem % n;
      rem /= n;
    }
    RealVector theta(t.rank);
    for (int j = 0; j < t.rank; ++j) theta(j) = kTwoPi * static_cast<double>(a[static_cast<std::size_t>(j)]) / n;
    out.push_back(TorsionPoint{a, n, exp_map(t.group, t.algebra(theta))});
  }
  return out;
}

int torsion_index(const FixedTorus& t, int n, const Matrix& x, double tol) {
  const TorusLog lg = t.log(x);
  if (lg.residual > tol) return -1;
  std::int64_t idx = 0;
  for (int j = 0; j < t.rank; ++j) {
    const double scaled = lg.theta(j) * n / kTwoPi;
    const double rounded = std::round(scaled);
    if (std::fabs(scaled - rounded) > 1e-6) return -1;
    std::int64_t a = static_cast<std::int64_t>(rounded) % n;
    if (a < 0) a += n;
    idx = idx * n + a;
  }
  return static_cast<int>(idx);
}

}  // namespace twisted
