#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twisted/types.hpp"

namespace twisted {

// Exact integer arithmetic used by the torus lattice code and by the
// order computation for lattice automorphisms. Every routine throws
// Error(Overflow) rather than wrapping.

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_power(const IntMatrix& a, std::int64_t e);
std::int64_t int_determinant(const IntMatrix& a);

/// Smith normal form: left * a * right == diag, with left and right
/// unimodular and diag(i,i) dividing diag(i+1,i+1), all nonnegative.
struct SmithForm {
  IntMatrix diag;
  IntMatrix left;
  IntMatrix right;
  int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Best rational approximation with den <= max_den; nullopt when no such
/// fraction lies within tol of x.
std::optional<Rational> reconstruct_rational(double x, std::int64_t max_den, double tol);

/// Integer polynomials, coefficient i multiplies x^i.
using IntPoly = std::vector<std::int64_t>;

IntPoly characteristic_polynomial(const IntMatrix& a);
IntPoly cyclotomic_polynomial(int m);

/// Exact division; returns nullopt if divisor does not divide p.
std::optional<IntPoly> poly_divide_exact(const IntPoly& p, const IntPoly& divisor);

int euler_phi(int m);

/// Removes all cyclotomic factors Phi_m with phi(m) <= deg(p). Returns the
/// leftover factor and the list of m that were removed (with multiplicity).
struct CyclotomicSplit {
  IntPoly leftover;
  std::vector<int> removed;
};

CyclotomicSplit strip_cyclotomic_factors(const IntPoly& p);

}  // namespace twisted
