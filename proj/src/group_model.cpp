#include "twisted/group_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "twisted/error.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

struct GroupDescriptor::Data {
  FamilySpec spec;
  int n = 0;
  double tol = 1e-9;
  std::vector<Matrix> basis;
  std::vector<Block> blocks;
  RealMatrix flat;   // 2N^2 x d
  RealMatrix pinv;   // d x 2N^2
  double min_sv = 0.0;
  std::string name;
};

namespace {

const Complex I1(0.0, 1.0);

int expected_dim(Family f, int n) {
  switch (f) {
    case Family::Unitary: return n * n;
    case Family::SpecialUnitary: return n * n - 1;
    case Family::SpecialOrthogonal: return n * (n - 1) / 2;
    case Family::Torus: return n;
    case Family::Product: break;
  }
  return 0;
}

void collect_blocks(const FamilySpec& spec, std::vector<Block>& out, int& offset) {
  switch (spec.family) {
    case Family::Product:
      if (spec.factors.empty()) throw Error(ErrorKind::UnsupportedFamily, "empty product");
      for (const auto& f : spec.factors) collect_blocks(f, out, offset);
      return;
    case Family::Torus:
      if (spec.size < 0) throw Error(ErrorKind::UnsupportedFamily, "Torus(k) needs k >= 0");
      break;
    case Family::Unitary:
    case Family::SpecialUnitary:
    case Family::SpecialOrthogonal:
      if (spec.size < 1) throw Error(ErrorKind::UnsupportedFamily, "matrix family needs N >= 1");
      break;
    default:
      throw Error(ErrorKind::UnsupportedFamily, "unknown family tag");
  }
  out.push_back(Block{spec.family, spec.size, offset});
  offset += spec.size;
}

Matrix unit(int n, int r, int c, Complex v) {
  Matrix m = Matrix::Zero(n, n);
  m(r, c) = v;
  return m;
}

void append_block_basis(const Block& b, int n, std::vector<Matrix>& basis) {
  const int o = b.offset;
  switch (b.family) {
    case Family::Torus:
    case Family::Unitary:
      for (int k = 0; k < b.size; ++k) basis.push_back(unit(n, o + k, o + k, I1));
      break;
    case Family::SpecialUnitary:
      for (int k = 0; k + 1 < b.size; ++k)
        basis.push_back(unit(n, o + k, o + k, I1) - unit(n, o + k + 1, o + k + 1, I1));
      break;
    default:
      break;
  }
  if (b.family == Family::Torus) return;
  for (int k = 0; k < b.size; ++k)
    for (int l = k + 1; l < b.size; ++l) {
      basis.push_back(unit(n, o + k, o + l, 1.0) - unit(n, o + l, o + k, 1.0));
      if (b.family != Family::SpecialOrthogonal)
        basis.push_back(unit(n, o + k, o + l, I1) + unit(n, o + l, o + k, I1));
    }
}

}  // namespace

std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  switch (spec.family) {
    case Family::Unitary: os << "U(" << spec.size << ")"; break;
    case Family::SpecialUnitary: os << "SU(" << spec.size << ")"; break;
    case Family::SpecialOrthogonal: os << "SO(" << spec.size << ")"; break;
    case Family::Torus: os << "T(" << spec.size << ")"; break;
    case Family::Product:
      for (std::size_t i = 0; i < spec.factors.size(); ++i) os << (i ? "x" : "") << describe(spec.factors[i]);
      break;
  }
  return os.str();
}

GroupDescriptor make_group(const FamilySpec& spec, double membership_tol) {
  if (!(membership_tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "membership_tol must be nonnegative");
  auto data = std::make_shared<GroupDescriptor::Data>();
  data->spec = spec;
  data->tol = membership_tol;
  int offset = 0;
  collect_blocks(spec, data->blocks, offset);
  data->n = offset;
  for (const auto& b : data->blocks) append_block_basis(b, data->n, data->basis);
  int expected = 0;
  for (const auto& b : data->blocks) expected += expected_dim(b.family, b.size);
  if (static_cast<int>(data->basis.size()) != expected)
    throw Error(ErrorKind::UnsupportedFamily, "internal basis dimension mismatch");
  data->flat = realify_columns(data->basis);
  if (!data->basis.empty()) {
    Eigen::JacobiSVD<RealMatrix> svd(data->flat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector s = svd.singularValues();
    data->min_sv = s(s.size() - 1);
    RealVector inv = s;
    for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > 1e-12 ? 1.0 / s(i) : 0.0;
    data->pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  } else {
    data->pinv = RealMatrix(0, 2 * data->n * data->n);
  }
  data->name = describe(spec);
  GroupDescriptor g;
  g.data_ = std::move(data);
  return g;
}

Family GroupDescriptor::family() const { return data_->spec.family; }
const FamilySpec& GroupDescriptor::spec() const { return data_->spec; }
int GroupDescriptor::ambient_size() const { return data_->n; }
int GroupDescriptor::dim() const { return static_cast<int>(data_->basis.size()); }
double GroupDescriptor::membership_tol() const { return data_->tol; }
const std::vector<Matrix>& GroupDescriptor::algebra_basis() const { return data_->basis; }
const std::vector<Block>& GroupDescriptor::blocks() const { return data_->blocks; }
std::string GroupDescriptor::name() const { return data_->name; }
double GroupDescriptor::basis_min_singular_value() const { return data_->min_sv; }

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
  return a.data_ == b.data_ || (a.data_->spec == b.data_->spec && a.data_->tol == b.data_->tol);
}

RealVector GroupDescriptor::coordinates(const Matrix& x) const {
  if (x.rows() != ambient_size() || x.cols() != ambient_size())
    throw Error(ErrorKind::DimensionMismatch, "algebra coordinates");
  if (dim() == 0) return RealVector(0);
  return data_->pinv * realify(x);
}

double GroupDescriptor::span_residual(const Matrix& x) const {
  if (dim() == 0) return x.norm();
  return (algebra_matrix(coordinates(x)) - x).norm();
}

Matrix GroupDescriptor::algebra_matrix(const RealVector& coords) const {
  if (coords.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "algebra coordinate vector");
  Matrix m = Matrix::Zero(ambient_size(), ambient_size());
  for (int i = 0; i < dim(); ++i) m += coords(i) * data_->basis[static_cast<std::size_t>(i)];
  return m;
}

AlgebraElement algebra_element(const GroupDescriptor& g, const RealVector& coords) {
  return AlgebraElement{coords, g.algebra_matrix(coords)};
}

Membership contains(const GroupDescriptor& g, const Matrix& m) {
  const int n = g.ambient_size();
  if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "contains: wrong matrix size");
  if (!m.allFinite()) return Membership{false, INFINITY};
  double residual = (m.adjoint() * m - Matrix::Identity(n, n)).norm();
  double off_block = 0.0;
  for (const auto& b : g.blocks()) {
    const Matrix blk = m.block(b.offset, b.offset, b.size, b.size);
    switch (b.family) {
      case Family::SpecialUnitary:
        residual += std::abs(blk.determinant() - 1.0);
        break;
      case Family::SpecialOrthogonal:
        residual += std::abs(blk.determinant() - 1.0) + blk.imag().norm();
        break;
      case Family::Torus: {
        Matrix off = blk;
        off.diagonal().setZero();
        residual += off.norm();
        break;
      }
      default:
        break;
    }
  }
  if (g.blocks().size() > 1) {
    Matrix rest = m;
    for (const auto& b : g.blocks()) rest.block(b.offset, b.offset, b.size, b.size).setZero();
    off_block = rest.norm();
  }
  residual += off_block;
  return Membership{residual <= g.membership_tol(), residual};
}

GroupElement identity(const GroupDescriptor& g) {
  return GroupElement{Matrix::Identity(g.ambient_size(), g.ambient_size()), g};
}

GroupElement make_element(const GroupDescriptor& g, const Matrix& m) {
  const Membership mem = contains(g, m);
  if (!mem.member) {
    std::ostringstream os;
    os << "matrix is not in " << g.name() << " (residual " << mem.residual << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  return GroupElement{m, g};
}

Matrix exp_anti_hermitian(const Matrix& x) {
  const Eigen::Index n = x.rows();
  if (n == 0) return Matrix(0, 0);
  // x = -i H with H = i x Hermitian.
  const Matrix h = Complex(0.0, 1.0) * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Per-factor cleanup of a matrix that is already (nearly) unitary.
Matrix clean_blocks(const GroupDescriptor& g, const Matrix& u) {
  const int n = g.ambient_size();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& b : g.blocks()) {
    Matrix blk = u.block(b.offset, b.offset, b.size, b.size);
    switch (b.family) {
      case Family::SpecialUnitary: {
        const Complex det = blk.determinant();
        const double alpha = std::arg(det);
        blk *= std::polar(1.0, -alpha / b.size);
        break;
      }
      case Family::SpecialOrthogonal: {
        const RealMatrix re = blk.real();
        Eigen::JacobiSVD<RealMatrix> svd(re, Eigen::ComputeFullU | Eigen::ComputeFullV);
        blk = (svd.matrixU() * svd.matrixV().transpose()).cast<Complex>();
        break;
      }
      case Family::Torus: {
        Matrix d = Matrix::Zero(b.size, b.size);
        for (int k = 0; k < b.size; ++k) {
          const Complex z = blk(k, k);
          d(k, k) = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
        }
        blk = d;
        break;
      }
      default:
        break;
    }
    out.block(b.offset, b.offset, b.size, b.size) = blk;
  }
  return out;
}

Matrix polar_blocks(const GroupDescriptor& g, const Matrix& m) {
  const int n = g.ambient_size();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& b : g.blocks()) {
    if (b.size == 0) continue;
    const Matrix blk = m.block(b.offset, b.offset, b.size, b.size);
    Eigen::JacobiSVD<Matrix> svd(blk, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.block(b.offset, b.offset, b.size, b.size) = svd.matrixU() * svd.matrixV().adjoint();
  }
  return out;
}

}  // namespace

Matrix retract(const GroupDescriptor& g, const Matrix& m) {
  if (m.rows() != g.ambient_size() || m.cols() != g.ambient_size())
    throw Error(ErrorKind::DimensionMismatch, "retract: wrong matrix size");
  return clean_blocks(g, polar_blocks(g, m));
}

GroupElement project_to_group(const GroupDescriptor& g, const Matrix& m) {
  const Matrix p = retract(g, m);
  const double distance = (p - m).norm();
  const Membership mem = contains(g, p);
  if (distance > 0.5 || !mem.member) {
    std::ostringstream os;
    os << "projection onto " << g.name() << " failed (distance " << distance << ", residual " << mem.residual << ")";
    throw Error(ErrorKind::ProjectionFailed, os.str());
  }
  return GroupElement{p, g};
}

GroupElement exp_map(const GroupDescriptor& g, const Matrix& x) {
  if (x.rows() != g.ambient_size() || x.cols() != g.ambient_size())
    throw Error(ErrorKind::DimensionMismatch, "exp_map: wrong matrix size");
  if (x.norm() > 1e3) throw Error(ErrorKind::Overflow, "exp_map: algebra element norm exceeds 1e3");
  return GroupElement{clean_blocks(g, exp_anti_hermitian(x)), g};
}

GroupElement exp_map(const GroupDescriptor& g, const AlgebraElement& x) { return exp_map(g, x.matrix); }

RealVector random_algebra_coords(const GroupDescriptor& g, std::uint64_t seed, double scale) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  RealVector c(g.dim());
  for (int i = 0; i < g.dim(); ++i) c(i) = normal(rng);
  return c;
}

GroupElement random_element(const GroupDescriptor& g, std::uint64_t seed) {
  Matrix m = Matrix::Identity(g.ambient_size(), g.ambient_size());
  for (int factor = 0; factor < 3; ++factor) {
    const RealVector c = random_algebra_coords(g, derive_seed(seed, 0x7a11, static_cast<std::uint64_t>(factor)), 1.5);
    m = m * exp_map(g, g.algebra_matrix(c)).matrix;
  }
  return GroupElement{clean_blocks(g, m), g};
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (!(a.group == b.group)) throw Error(ErrorKind::GroupMismatch, "multiply");
  return GroupElement{a.matrix * b.matrix, a.group};
}

GroupElement inverse(const GroupElement& a) { return GroupElement{a.matrix.adjoint(), a.group}; }

}  // namespace twisted
