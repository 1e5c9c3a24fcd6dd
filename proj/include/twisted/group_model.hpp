#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twisted/types.hpp"

namespace twisted {

enum class Family { Unitary, SpecialUnitary, SpecialOrthogonal, Torus, Product };

/// Parameters for make_group. `size` is N for the matrix families and k for
/// Torus(k); `factors` is used only by Product.
struct FamilySpec {
  Family family = Family::Unitary;
  int size = 1;
  std::vector<FamilySpec> factors;

  static FamilySpec unitary(int n) { return {Family::Unitary, n, {}}; }
  static FamilySpec special_unitary(int n) { return {Family::SpecialUnitary, n, {}}; }
  static FamilySpec special_orthogonal(int n) { return {Family::SpecialOrthogonal, n, {}}; }
  static FamilySpec torus(int k) { return {Family::Torus, k, {}}; }
  static FamilySpec product(std::vector<FamilySpec> fs) { return {Family::Product, 0, std::move(fs)}; }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

std::string describe(const FamilySpec& spec);

/// A non-product factor placed on the diagonal of the ambient matrix.
struct Block {
  Family family;
  int size;
  int offset;
};

/// Compact matrix group realised inside U(N), with a fixed real basis of its
/// Lie algebra. Immutable; copies share the underlying data.
class GroupDescriptor {
 public:
  Family family() const;
  const FamilySpec& spec() const;
  int ambient_size() const;
  int dim() const;
  double membership_tol() const;
  const std::vector<Matrix>& algebra_basis() const;
  const std::vector<Block>& blocks() const;
  std::string name() const;

  /// Least-squares coordinates of X in the algebra basis.
  RealVector coordinates(const Matrix& x) const;
  /// Frobenius distance from X to the real span of the basis.
  double span_residual(const Matrix& x) const;
  Matrix algebra_matrix(const RealVector& coords) const;
  /// Smallest singular value of the flattened basis.
  double basis_min_singular_value() const;

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  friend GroupDescriptor make_group(const FamilySpec&, double);
};

/// Throws UnsupportedFamily for invalid parameters.
GroupDescriptor make_group(const FamilySpec& spec, double membership_tol = 1e-9);

struct GroupElement {
  Matrix matrix;
  GroupDescriptor group;
};

struct AlgebraElement {
  RealVector coords;
  Matrix matrix;
};

AlgebraElement algebra_element(const GroupDescriptor& g, const RealVector& coords);

struct Membership {
  bool member = false;
  double residual = 0.0;
};

Membership contains(const GroupDescriptor& g, const Matrix& m);

GroupElement identity(const GroupDescriptor& g);

/// Wraps a matrix as an element; throws InvalidArgument if it fails contains.
GroupElement make_element(const GroupDescriptor& g, const Matrix& m);

GroupElement exp_map(const GroupDescriptor& g, const AlgebraElement& x);
GroupElement exp_map(const GroupDescriptor& g, const Matrix& x);

/// exp of an anti-Hermitian matrix via the Hermitian eigendecomposition.
Matrix exp_anti_hermitian(const Matrix& x);

/// Product of three exponentials of Gaussian algebra elements. Full support,
/// not Haar.
GroupElement random_element(const GroupDescriptor& g, std::uint64_t seed);
RealVector random_algebra_coords(const GroupDescriptor& g, std::uint64_t seed, double scale = 1.0);

/// Polar retraction followed by per-factor corrections. Throws
/// ProjectionFailed if the input is farther than 0.5 from the result or the
/// result is not a member.
GroupElement project_to_group(const GroupDescriptor& g, const Matrix& m);

/// Same corrections without the distance precondition; used inside the
/// optimisers, where iterates are always close to the group.
Matrix retract(const GroupDescriptor& g, const Matrix& m);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

}  // namespace twisted
