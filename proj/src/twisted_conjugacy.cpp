#include "twisted/twisted_conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "twisted/error.hpp"
#include "twisted/integer_lattice.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conjugate: return "conjugate";
    case Verdict::NotConjugate: return "not_conjugate";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

Matrix twisted_conjugate_matrix(const Automorphism& s, const Matrix& g, const Matrix& h) {
  return g * h * s.apply_matrix(g).adjoint();
}

GroupElement twisted_conjugate(const GroupElement& g, const GroupElement& h, const Automorphism& s) {
  if (!(g.group == s.group()) || !(h.group == s.group())) throw Error(ErrorKind::GroupMismatch, "twisted_conjugate");
  return GroupElement{twisted_conjugate_matrix(s, g.matrix, h.matrix), s.group()};
}

std::vector<Complex> twisted_spectral_invariant(const GroupElement& t, const Automorphism& s) {
  Matrix y;
  switch (s.kind()) {
    case AutomorphismKind::Hol:
      y = t.matrix * s.conjugator();
      break;
    case AutomorphismKind::AntiHol: {
      const Matrix tb = t.matrix * s.conjugator();
      y = tb * tb.conjugate();
      break;
    }
    case AutomorphismKind::Lattice:
      throw Error(ErrorKind::UnsupportedKind, "spectral invariant is not defined for lattice automorphisms");
  }
  if (y.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> es(y, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
  });
  return out;
}

namespace {

Complex pfaffian(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  Complex sum = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (a(0, j) == Complex(0.0)) continue;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    Matrix minor(n - 2, n - 2);
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(keep[r], keep[c]);
    sum += (j % 2 == 1 ? 1.0 : -1.0) * a(0, j) * pfaffian(minor);
  }
  return sum;
}

}  // namespace

std::vector<Complex> twisted_scalar_invariants(const GroupElement& t, const Automorphism& s) {
  const Family f = s.group().family();
  const bool congruence = (f == Family::SpecialUnitary && s.kind() == AutomorphismKind::AntiHol) ||
                          (f == Family::SpecialOrthogonal && s.kind() != AutomorphismKind::Lattice);
  if (!congruence) return {};
  const Matrix m = t.matrix * s.conjugator();
  const Matrix sym = 0.5 * (m + m.transpose());
  std::vector<Complex> out{sym.determinant()};
  if (m.rows() % 2 == 0) out.push_back(pfaffian(0.5 * (m - m.transpose())));
  return out;
}

namespace {

bool perfect_matching(const std::vector<Complex>& a, const std::vector<Complex>& b, double limit) {
  const std::size_t n = a.size();
  std::vector<int> match(n, -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t u, std::vector<char>& seen) {
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v] || std::abs(a[u] - b[v]) > limit) continue;
      seen[v] = 1;
      if (match[v] < 0 || augment(static_cast<std::size_t>(match[v]), seen)) {
        match[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<char> seen(n, 0);
    if (!augment(u, seen)) return false;
  }
  return true;
}

}  // namespace

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "multiset sizes differ");
  if (a.empty()) return 0.0;
  std::vector<double> candidates;
  for (const auto& x : a)
    for (const auto& y : b) candidates.push_back(std::abs(x - y));
  std::sort(candidates.begin(), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

TwistedDistance::TwistedDistance(const Automorphism& s, const Matrix& t1, const Matrix& t2)
    : s_(s), t1_(t1), t2_(t2), basis_(s.group().algebra_basis()) {
  for (const auto& e : basis_) dbasis_.push_back(s.apply_algebra(e));
}

double TwistedDistance::value(const Matrix& g) const {
  return (twisted_conjugate_matrix(s_, g, t1_) - t2_).squaredNorm();
}

RealVector TwistedDistance::gradient(const Matrix& g) const {
  const Matrix y = twisted_conjugate_matrix(s_, g, t1_);
  const Matrix r = y - t2_;
  RealVector grad(static_cast<Eigen::Index>(basis_.size()));
  // d/ds tau_{exp(sE) g}(t1) at s = 0 is E y - y dsigma(E).
  const Matrix ra = r.adjoint();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Matrix dy = basis_[i] * y - y * dbasis_[i];
    grad(static_cast<Eigen::Index>(i)) = 2.0 * (ra * dy).trace().real();
  }
  return grad;
}

RealMatrix TwistedDistance::jacobian(const Matrix& g) const {
  const Matrix y = twisted_conjugate_matrix(s_, g, t1_);
  std::vector<Matrix> cols;
  for (std::size_t i = 0; i < basis_.size(); ++i) cols.push_back(basis_[i] * y - y * dbasis_[i]);
  return realify_columns(cols);
}

RealVector TwistedDistance::residual(const Matrix& g) const {
  return realify(twisted_conjugate_matrix(s_, g, t1_) - t2_);
}

DescentResult descend(const TwistedDistance& f, const GroupDescriptor& group, const Matrix& start,
                      const OracleConfig& config) {
  DescentResult out;
  out.g = start;
  out.value = f.value(start);
  const auto& basis = group.algebra_basis();
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  double lambda = 1e-3;
  for (out.iterations = 0; out.iterations < config.max_iterations; ++out.iterations) {
    const RealMatrix j = f.jacobian(out.g);
    const RealVector r = f.residual(out.g);
    const RealVector jr = j.transpose() * r;
    out.gradient_norm = 2.0 * jr.norm();
    if (out.gradient_norm < config.gradient_tol || out.value < 1e-30) break;
    const RealMatrix jtj = j.transpose() * j;
    bool accepted = false;
    while (lambda < 1e10) {
      RealMatrix a = jtj;
      a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const RealVector step = a.ldlt().solve(-jr);
      Matrix x = Matrix::Zero(group.ambient_size(), group.ambient_size());
      for (Eigen::Index i = 0; i < d; ++i) x += step(i) * basis[static_cast<std::size_t>(i)];
      const Matrix candidate = retract(group, exp_anti_hermitian(x) * out.g);
      const double value = f.value(candidate);
      if (value < out.value) {
        out.g = candidate;
        out.value = value;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  return out;
}

namespace {

ConjugacyDecision lattice_decision(const GroupElement& t1, const GroupElement& t2, const Automorphism& s,
                                   const OracleConfig& config) {
  const IntMatrix& m = s.lattice_matrix();
  const Eigen::Index k = m.rows();
  RealVector th1(k), th2(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    th1(j) = std::arg(t1.matrix(j, j));
    th2(j) = std::arg(t2.matrix(j, j));
  }
  const RealVector delta = (th2 - th1) / kTwoPi;
  const IntMatrix a = IntMatrix::Identity(k, k) - m;
  const SmithForm snf = smith_normal_form(a);
  const RealVector ld = snf.left.cast<double>() * delta;
  // Rows beyond the rank are integral characters killing im(1 - M).
  RealVector target = ld;
  for (Eigen::Index j = snf.rank; j < k; ++j) target(j) = 0.0;
  RealVector x = RealVector::Zero(k);  // x' = right * S^+ * (left delta - w)
  for (Eigen::Index j = 0; j < snf.rank; ++j) x(j) = target(j) / static_cast<double>(snf.diag(j, j));
  const RealVector phi = kTwoPi * (snf.right.cast<double>() * x);
  Matrix g = Matrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) g(j, j) = std::polar(1.0, phi(j));

  ConjugacyDecision out;
  out.restarts_used = 0;
  out.best_residual = (twisted_conjugate_matrix(s, g, t1.matrix) - t2.matrix).norm();
  if (out.best_residual <= config.witness_tol) {
    out.verdict = Verdict::Conjugate;
    out.witness = GroupElement{g, s.group()};
    return out;
  }
  SpectralCertificate cert;
  const IntMatrix c = snf.left.bottomRows(k - snf.rank);
  const RealVector c1 = c.cast<double>() * th1;
  const RealVector c2 = c.cast<double>() * th2;
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    cert.first.push_back(std::polar(1.0, c1(j)));
    cert.second.push_back(std::polar(1.0, c2(j)));
    cert.distance = std::max(cert.distance, std::abs(cert.first.back() - cert.second.back()));
  }
  out.verdict = Verdict::NotConjugate;
  out.certificate = cert;
  return out;
}

// sigma on a torus group restricted to the diagonal: B is monomial, so the
// map on angles is a signed permutation.
Automorphism as_lattice(const Automorphism& s) {
  const Matrix& b = s.conjugator();
  const Eigen::Index k = b.rows();
  const std::int64_t sign = s.kind() == AutomorphismKind::AntiHol ? -1 : 1;
  IntMatrix m = IntMatrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index row = 0;
    b.col(j).cwiseAbs().maxCoeff(&row);
    m(row, j) = sign;
  }
  return Automorphism::lattice(s.group(), m);
}

}  // namespace

ConjugacyDecision are_sigma_conjugate(const GroupElement& t1, const GroupElement& t2, const Automorphism& s,
                                      std::uint64_t seed, const OracleConfig& config) {
  if (!(t1.group == s.group()) || !(t2.group == s.group())) throw Error(ErrorKind::GroupMismatch, "are_sigma_conjugate");
  if (s.kind() == AutomorphismKind::Lattice) return lattice_decision(t1, t2, s, config);
  if (s.group().family() == Family::Torus) return lattice_decision(t1, t2, as_lattice(s), config);

  ConjugacyDecision out;
  auto inv1 = twisted_spectral_invariant(t1, s);
  auto inv2 = twisted_spectral_invariant(t2, s);
  double gap = multiset_distance(inv1, inv2);
  const auto sc1 = twisted_scalar_invariants(t1, s);
  const auto sc2 = twisted_scalar_invariants(t2, s);
  for (std::size_t k = 0; k < sc1.size(); ++k) gap = std::max(gap, std::abs(sc1[k] - sc2[k]));
  inv1.insert(inv1.end(), sc1.begin(), sc1.end());
  inv2.insert(inv2.end(), sc2.begin(), sc2.end());
  if (gap > config.spectral_separation) {
    out.verdict = Verdict::NotConjugate;
    out.certificate = SpectralCertificate{inv1, inv2, gap};
    out.best_residual = INFINITY;
    return out;
  }

  const GroupDescriptor& group = s.group();
  const TwistedDistance f(s, t1.matrix, t2.matrix);
  const double target = config.witness_tol * config.witness_tol;
  const int chunk = std::max(1, config.chunk);
  std::vector<DescentResult> results(static_cast<std::size_t>(std::max(0, config.restarts)));
  int best = -1;
  int done = 0;
  while (done < config.restarts) {
    const int end = std::min(config.restarts, done + chunk);
    for_each_index(config.execution, done, end, [&](int i) {
      const Matrix start = i == 0 ? Matrix::Identity(group.ambient_size(), group.ambient_size())
                                  : random_element(group, derive_seed(seed, 0x0acc, static_cast<std::uint64_t>(i))).matrix;
      results[static_cast<std::size_t>(i)] = descend(f, group, start, config);
    });
    for (int i = done; i < end; ++i)
      if (best < 0 || results[static_cast<std::size_t>(i)].value < results[static_cast<std::size_t>(best)].value)
        best = i;
    done = end;
    if (best >= 0 && results[static_cast<std::size_t>(best)].value < target) break;
  }
  out.restarts_used = done;
  if (best < 0) return out;
  const Matrix& g = results[static_cast<std::size_t>(best)].g;
  // Re-verify by direct evaluation of the witness.
  out.best_residual = (twisted_conjugate_matrix(s, g, t1.matrix) - t2.matrix).norm();
  if (out.best_residual <= config.witness_tol && contains(group, g).member) {
    out.verdict = Verdict::Conjugate;
    out.witness = GroupElement{g, group};
  }
  return out;
}

int orbit_dimension(const GroupElement& t, const Automorphism& s, double rel_threshold) {
  if (!(t.group == s.group())) throw Error(ErrorKind::GroupMismatch, "orbit_dimension");
  std::vector<Matrix> images;
  for (const auto& e : s.group().algebra_basis()) images.push_back(e * t.matrix - t.matrix * s.apply_algebra(e));
  if (images.empty()) return 0;
  return decide_rank_strict(realify_columns(images), rel_threshold, "orbit dimension").rank;
}

}  // namespace twisted
