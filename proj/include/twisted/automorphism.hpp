#pragma once

#include <optional>
#include <string>

#include "twisted/group_model.hpp"

namespace twisted {

enum class AutomorphismKind {
  Hol,      ///< g -> B g B^-1
  AntiHol,  ///< g -> B conj(g) B^-1
  Lattice,  ///< exp(i diag(theta)) -> exp(i diag(M theta)) on Torus(k)
};

const char* to_string(AutomorphismKind kind);

class Automorphism {
 public:
  /// B must be unitary and the resulting map must preserve the group
  /// (checked on seeded samples); throws InvalidAutomorphism otherwise.
  static Automorphism hol(const GroupDescriptor& g, const Matrix& b);
  static Automorphism antihol(const GroupDescriptor& g, const Matrix& b);
  /// Torus(k) only; M is k x k with determinant +-1.
  static Automorphism lattice(const GroupDescriptor& g, const IntMatrix& m);
  static Automorphism identity(const GroupDescriptor& g);

  AutomorphismKind kind() const { return kind_; }
  const Matrix& conjugator() const { return b_; }
  const IntMatrix& lattice_matrix() const { return m_; }
  const GroupDescriptor& group() const { return group_; }
  std::string describe() const;

  /// Image of an arbitrary ambient matrix (no membership checks). For
  /// Lattice, only the diagonal phases of the input are read.
  Matrix apply_matrix(const Matrix& x) const;
  /// dsigma on an ambient algebra matrix.
  Matrix apply_algebra(const Matrix& x) const;

 private:
  Automorphism(AutomorphismKind k, GroupDescriptor g, Matrix b, IntMatrix m)
      : kind_(k), group_(std::move(g)), b_(std::move(b)), m_(std::move(m)) {}
  static Automorphism unchecked(AutomorphismKind k, const GroupDescriptor& g, const Matrix& b, const IntMatrix& m);
  void validate() const;

  AutomorphismKind kind_;
  GroupDescriptor group_;
  Matrix b_;
  IntMatrix m_;

  friend Automorphism compose(const Automorphism&, const Automorphism&);
};

/// first o second. Hol/AntiHol compose into Hol/AntiHol, Lattice into
/// Lattice; mixed Lattice/matrix compositions throw UnsupportedKind.
Automorphism compose(const Automorphism& first, const Automorphism& second);
Automorphism power(const Automorphism& s, int r);
/// Inn(h) o sigma.
Automorphism inner_twist(const GroupElement& h, const Automorphism& s);

GroupElement apply(const Automorphism& s, const GroupElement& g);

/// Matrix of dsigma in algebra-basis coordinates (d x d).
RealMatrix differential(const Automorphism& s);

struct AutomorphismOrder {
  bool finite = false;
  int n = 0;
  /// Set when infinite order is proven rather than merely not found.
  bool certified_infinite = false;
  std::string certificate;
};

AutomorphismOrder order_of(const Automorphism& s);

/// ker(1 - dsigma) == ker((1 - dsigma)^2), via relative singular-value
/// thresholding. Throws IllConditioned on an ambiguous rank.
bool is_one_semisimple(const Automorphism& s, double rel_threshold = 1e-8);

}  // namespace twisted
