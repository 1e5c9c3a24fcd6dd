#include "twisted/automorphism.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "twisted/error.hpp"
#include "twisted/integer_lattice.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

namespace {

constexpr std::uint64_t kValidationSeed = 0x5eedf00dULL;
constexpr int kValidationSamples = 50;
constexpr int kMaxOrderSearch = 24;

bool is_torus(const GroupDescriptor& g) { return g.family() == Family::Torus; }

}  // namespace

const char* to_string(AutomorphismKind kind) {
  switch (kind) {
    case AutomorphismKind::Hol: return "hol";
    case AutomorphismKind::AntiHol: return "antihol";
    case AutomorphismKind::Lattice: return "lattice";
  }
  return "?";
}

Automorphism Automorphism::unchecked(AutomorphismKind k, const GroupDescriptor& g, const Matrix& b,
                                     const IntMatrix& m) {
  return Automorphism(k, g, b, m);
}

Automorphism Automorphism::hol(const GroupDescriptor& g, const Matrix& b) {
  Automorphism a(AutomorphismKind::Hol, g, b, IntMatrix());
  a.validate();
  return a;
}

Automorphism Automorphism::antihol(const GroupDescriptor& g, const Matrix& b) {
  Automorphism a(AutomorphismKind::AntiHol, g, b, IntMatrix());
  a.validate();
  return a;
}

Automorphism Automorphism::lattice(const GroupDescriptor& g, const IntMatrix& m) {
  Automorphism a(AutomorphismKind::Lattice, g, Matrix(), m);
  a.validate();
  return a;
}

Automorphism Automorphism::identity(const GroupDescriptor& g) {
  return hol(g, Matrix::Identity(g.ambient_size(), g.ambient_size()));
}

namespace {

std::string format_entry(Complex z) {
  auto num = [](double x) {
    std::ostringstream os;
    os << std::setprecision(4) << x;
    return os.str();
  };
  const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
  if (im == 0.0) return num(re);
  const std::string i = im == 1.0 ? "i" : im == -1.0 ? "-i" : num(im) + "i";
  if (re == 0.0) return i;
  return num(re) + (im > 0 ? "+" : "") + i;
}

}  // namespace

std::string Automorphism::describe() const {
  std::ostringstream os;
  const Eigen::Index n = b_.rows();
  if (kind_ == AutomorphismKind::Lattice) {
    os << "lattice[";
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      os << (i ? ",[" : "[");
      for (Eigen::Index j = 0; j < m_.cols(); ++j) os << (j ? "," : "") << m_(i, j);
      os << "]";
    }
    os << "]";
  } else if ((b_ - Matrix::Identity(n, n)).norm() < 1e-12) {
    os << (kind_ == AutomorphismKind::Hol ? "identity" : "conjugation");
  } else {
    os << to_string(kind_) << "(";
    Matrix off = b_;
    off.diagonal().setZero();
    if (off.norm() < 1e-12) {
      os << "diag(";
      for (Eigen::Index k = 0; k < n; ++k) os << (k ? "," : "") << format_entry(b_(k, k));
      os << ")";
    } else {
      os << "B";
    }
    os << ")";
  }
  os << " on " << group_.name();
  return os.str();
}

void Automorphism::validate() const {
  const int n = group_.ambient_size();
  if (kind_ == AutomorphismKind::Lattice) {
    if (!is_torus(group_)) throw Error(ErrorKind::InvalidAutomorphism, "lattice automorphisms act on Torus(k) only");
    if (m_.rows() != n || m_.cols() != n)
      throw Error(ErrorKind::InvalidAutomorphism, "lattice matrix must be k x k");
    const std::int64_t det = int_determinant(m_);
    if (det != 1 && det != -1) throw Error(ErrorKind::InvalidAutomorphism, "lattice matrix must have determinant +-1");
    return;
  }
  if (b_.rows() != n || b_.cols() != n) throw Error(ErrorKind::InvalidAutomorphism, "conjugator has wrong size");
  if ((b_.adjoint() * b_ - Matrix::Identity(n, n)).norm() > 1e-10)
    throw Error(ErrorKind::InvalidAutomorphism, "conjugator is not unitary");
  const double tol = std::max(group_.membership_tol(), 1e-9);
  for (int i = 0; i < kValidationSamples; ++i) {
    const GroupElement g = random_element(group_, derive_seed(kValidationSeed, 1, static_cast<std::uint64_t>(i)));
    const GroupElement h = random_element(group_, derive_seed(kValidationSeed, 2, static_cast<std::uint64_t>(i)));
    const Matrix sg = apply_matrix(g.matrix);
    const Membership mem = contains(group_, sg);
    if (mem.residual > tol)
      throw Error(ErrorKind::InvalidAutomorphism, "automorphism does not preserve " + group_.name());
    if ((apply_matrix(g.matrix * h.matrix) - sg * apply_matrix(h.matrix)).norm() > 1e-9)
      throw Error(ErrorKind::InvalidAutomorphism, "map is not a homomorphism on samples");
  }
}

Matrix Automorphism::apply_matrix(const Matrix& x) const {
  switch (kind_) {
    case AutomorphismKind::Hol: return b_ * x * b_.adjoint();
    case AutomorphismKind::AntiHol: return b_ * x.conjugate() * b_.adjoint();
    case AutomorphismKind::Lattice: {
      const Eigen::Index k = m_.rows();
      RealVector theta(k);
      for (Eigen::Index j = 0; j < k; ++j) theta(j) = std::arg(x(j, j));
      const RealVector image = m_.cast<double>() * theta;
      Matrix out = Matrix::Zero(k, k);
      for (Eigen::Index j = 0; j < k; ++j) out(j, j) = std::polar(1.0, image(j));
      return out;
    }
  }
  return x;
}

Matrix Automorphism::apply_algebra(const Matrix& x) const {
  switch (kind_) {
    case AutomorphismKind::Hol: return b_ * x * b_.adjoint();
    case AutomorphismKind::AntiHol: return b_ * x.conjugate() * b_.adjoint();
    case AutomorphismKind::Lattice: {
      const Eigen::Index k = m_.rows();
      RealVector theta(k);
      for (Eigen::Index j = 0; j < k; ++j) theta(j) = x(j, j).imag();
      const RealVector image = m_.cast<double>() * theta;
      Matrix out = Matrix::Zero(k, k);
      for (Eigen::Index j = 0; j < k; ++j) out(j, j) = Complex(0.0, image(j));
      return out;
    }
  }
  return x;
}

Automorphism compose(const Automorphism& first, const Automorphism& second) {
  if (!(first.group() == second.group())) throw Error(ErrorKind::GroupMismatch, "compose");
  using K = AutomorphismKind;
  const K a = first.kind();
  const K b = second.kind();
  if (a == K::Lattice && b == K::Lattice)
    return Automorphism::unchecked(K::Lattice, first.group(), Matrix(),
                                   int_multiply(first.lattice_matrix(), second.lattice_matrix()));
  if (a == K::Lattice || b == K::Lattice)
    throw Error(ErrorKind::UnsupportedKind, "cannot compose lattice and matrix automorphisms");
  const Matrix& b1 = first.conjugator();
  const Matrix& b2 = second.conjugator();
  // B1 sigma2(g) B1^-1 with sigma2(g) = B2 g' B2^-1, g' = g or conj(g).
  if (a == K::Hol) return Automorphism::unchecked(b, first.group(), b1 * b2, IntMatrix());
  const K kind = (b == K::Hol) ? K::AntiHol : K::Hol;
  return Automorphism::unchecked(kind, first.group(), b1 * b2.conjugate(), IntMatrix());
}

Automorphism power(const Automorphism& s, int r) {
  if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative automorphism power");
  if (r == 0) {
    if (s.kind() == AutomorphismKind::Lattice) {
      const Eigen::Index k = s.lattice_matrix().rows();
      return Automorphism::lattice(s.group(), IntMatrix::Identity(k, k));
    }
    return Automorphism::identity(s.group());
  }
  Automorphism out = s;
  for (int i = 1; i < r; ++i) out = compose(out, s);
  return out;
}

Automorphism inner_twist(const GroupElement& h, const Automorphism& s) {
  if (!(h.group == s.group())) throw Error(ErrorKind::GroupMismatch, "inner_twist");
  return compose(Automorphism::hol(s.group(), h.matrix), s);
}

GroupElement apply(const Automorphism& s, const GroupElement& g) {
  if (!(g.group == s.group())) throw Error(ErrorKind::GroupMismatch, "apply");
  return GroupElement{s.apply_matrix(g.matrix), g.group};
}

RealMatrix differential(const Automorphism& s) {
  const GroupDescriptor& g = s.group();
  const int d = g.dim();
  if (s.kind() == AutomorphismKind::Lattice) return s.lattice_matrix().cast<double>();
  RealMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    const Matrix image = s.apply_algebra(g.algebra_basis()[static_cast<std::size_t>(j)]);
    const RealVector c = g.coordinates(image);
    if ((g.algebra_matrix(c) - image).norm() > 1e-8)
      throw Error(ErrorKind::DifferentialNotInAlgebra, "dsigma(basis) leaves the Lie algebra");
    out.col(j) = c;
  }
  return out;
}

namespace {

AutomorphismOrder lattice_order(const IntMatrix& m) {
  AutomorphismOrder out;
  const Eigen::Index k = m.rows();
  if (k == 0) {
    out.finite = true;
    out.n = 1;
    return out;
  }
  const CyclotomicSplit split = strip_cyclotomic_factors(characteristic_polynomial(m));
  if (split.leftover.size() > 1) {
    out.certified_infinite = true;
    out.certificate = "characteristic polynomial has a non-cyclotomic factor (eigenvalue off the unit circle)";
    return out;
  }
  std::int64_t period = 1;
  for (int c : split.removed) period = lcm64(period, c);
  IntMatrix full;
  try {
    full = int_power(m, period);
  } catch (const Error&) {
    // Powers of a finite-order integer matrix stay bounded.
    out.certified_infinite = true;
    out.certificate = "matrix powers grow without bound";
    return out;
  }
  if (full != IntMatrix::Identity(k, k)) {
    out.certified_infinite = true;
    out.certificate = "roots of unity spectrum but not diagonalisable (M^L != I)";
    return out;
  }
  for (std::int64_t d = 1; d <= period; ++d)
    if (period % d == 0 && int_power(m, d) == IntMatrix::Identity(k, k)) {
      out.finite = true;
      out.n = static_cast<int>(d);
      return out;
    }
  return out;
}

}  // namespace

AutomorphismOrder order_of(const Automorphism& s) {
  if (s.kind() == AutomorphismKind::Lattice) return lattice_order(s.lattice_matrix());
  const GroupDescriptor& g = s.group();
  const RealMatrix ds = differential(s);
  std::vector<GroupElement> samples;
  for (int i = 0; i < 20; ++i)
    samples.push_back(random_element(g, derive_seed(kValidationSeed, 3, static_cast<std::uint64_t>(i))));
  std::vector<Matrix> images;
  for (const auto& x : samples) images.push_back(x.matrix);
  RealMatrix p = RealMatrix::Identity(g.dim(), g.dim());
  for (int n = 1; n <= kMaxOrderSearch; ++n) {
    p = ds * p;
    bool fixed = (p - RealMatrix::Identity(g.dim(), g.dim())).norm() < 1e-9;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      images[i] = s.apply_matrix(images[i]);
      if ((images[i] - samples[i].matrix).norm() > 1e-9) fixed = false;
    }
    if (fixed) return AutomorphismOrder{true, n, false, {}};
  }
  throw Error(ErrorKind::OrderUndetermined, "no period up to 24 and no infinite-order certificate");
}

bool is_one_semisimple(const Automorphism& s, double rel_threshold) {
  const RealMatrix ds = differential(s);
  const Eigen::Index d = ds.rows();
  const RealMatrix a = RealMatrix::Identity(d, d) - ds;
  const RankDecision k1 = decide_rank_strict(a, rel_threshold, "ker(1 - dsigma)");
  const RankDecision k2 = decide_rank_strict(a * a, rel_threshold, "ker((1 - dsigma)^2)");
  return (d - k1.rank) == (d - k2.rank);
}

}  // namespace twisted
