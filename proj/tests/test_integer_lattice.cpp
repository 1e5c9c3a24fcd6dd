#include <random>

#include "doctest.h"
#include "twisted/error.hpp"
#include "twisted/integer_lattice.hpp"

using namespace twisted;

namespace {

IntMatrix random_int_matrix(std::mt19937_64& rng, int rows, int cols, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith form: left * a * right is diagonal with a divisibility chain") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> size(1, 5);
    const int r = size(rng), c = size(rng);
    IntMatrix a = random_int_matrix(rng, r, c, 6);
    if (trial % 5 == 0 && r > 1) a.row(r - 1) = 2 * a.row(0);  // force rank deficiency
    const SmithForm s = smith_normal_form(a);
    CHECK(int_multiply(int_multiply(s.left, a), s.right) == s.diag);
    CHECK(std::llabs(int_determinant(s.left)) == 1);
    CHECK(std::llabs(int_determinant(s.right)) == 1);
    for (int i = 0; i < std::min(r, c); ++i) {
      CHECK(s.diag(i, i) >= 0);
      if (i + 1 < std::min(r, c) && s.diag(i, i) != 0) CHECK(s.diag(i + 1, i + 1) % s.diag(i, i) == 0);
    }
    IntMatrix off = s.diag;
    for (int i = 0; i < std::min(r, c); ++i) off(i, i) = 0;
    CHECK(off.isZero());
    int nonzero = 0;
    for (int i = 0; i < std::min(r, c); ++i) nonzero += s.diag(i, i) != 0;
    CHECK(nonzero == s.rank);
  }
}

TEST_CASE("smith form of known matrices") {
  IntMatrix a(2, 2);
  a << 2, 4, 6, 8;
  CHECK(smith_normal_form(a).diag.diagonal() == (IntVector(2) << 2, 4).finished());
  IntMatrix b(3, 3);
  b << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  const SmithForm s = smith_normal_form(b);
  CHECK(s.rank == 1);
  CHECK(s.diag(0, 0) == 1);
}

TEST_CASE("determinant agrees with a cofactor expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = random_int_matrix(rng, 3, 3, 9);
    const std::int64_t cof = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    CHECK(int_determinant(a) == cof);
  }
}

TEST_CASE("checked arithmetic reports overflow") {
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), Error);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
  CHECK(checked_mul(-3, 7) == -21);
  CHECK(gcd64(12, -18) == 6);
  CHECK(lcm64(4, 6) == 12);
}

TEST_CASE("rational reconstruction recovers small fractions") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-500, 500), den(1, 997);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = num(rng), q = den(rng);
    const auto r = reconstruct_rational(static_cast<double>(p) / q + 1e-10, 1000000, 1e-6);
    REQUIRE(r.has_value());
    CHECK(r->num * q == static_cast<std::int64_t>(p) * r->den);
  }
  CHECK_FALSE(reconstruct_rational(3.14159265358979, 100, 1e-9).has_value());
}

TEST_CASE("characteristic polynomial and cyclotomic stripping") {
  IntMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(characteristic_polynomial(swap) == IntPoly{-1, 0, 1});
  IntMatrix cat(2, 2);
  cat << 2, 1, 1, 1;
  CHECK(characteristic_polynomial(cat) == IntPoly{1, -3, 1});
  CHECK(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_polynomial(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == IntPoly{1, -1, 1});
  CHECK(euler_phi(12) == 4);

  const CyclotomicSplit s = strip_cyclotomic_factors(characteristic_polynomial(swap));
  CHECK(s.leftover == IntPoly{1});
  CHECK(s.removed.size() == 2);
  const CyclotomicSplit c = strip_cyclotomic_factors(characteristic_polynomial(cat));
  CHECK(c.leftover == IntPoly{1, -3, 1});
}

TEST_CASE("integer powers") {
  IntMatrix rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK(int_power(rot, 4) == IntMatrix::Identity(2, 2));
  CHECK(int_power(rot, 2) == -IntMatrix::Identity(2, 2));
}
