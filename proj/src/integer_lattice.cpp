#include "twisted/integer_lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "twisted/error.hpp"

namespace twisted {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer multiplication");
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::llabs(a) / gcd64(a, b), std::llabs(b));
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "int_multiply");
  IntMatrix c = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      std::int64_t s = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s = checked_add(s, checked_mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

IntMatrix int_power(const IntMatrix& a, std::int64_t e) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "int_power of non-square matrix");
  IntMatrix result = IntMatrix::Identity(a.rows(), a.cols());
  IntMatrix base = a;
  while (e > 0) {
    if (e & 1) result = int_multiply(result, base);
    e >>= 1;
    if (e > 0) base = int_multiply(base, base);
  }
  return result;
}

std::int64_t int_determinant(const IntMatrix& a) {
  // Bareiss fraction-free elimination.
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(m(i, j)) * m(k, k) - static_cast<__int128>(m(i, k)) * m(k, j);
        const __int128 q = num / prev;
        if (q > INT64_MAX || q < INT64_MIN) throw Error(ErrorKind::Overflow, "determinant");
        m(i, j) = static_cast<std::int64_t>(q);
      }
    prev = m(k, k);
  }
  return checked_mul(sign, m(n - 1, n - 1));
}

namespace {

void swap_rows(IntMatrix& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}
void swap_cols(IntMatrix& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.col(a).swap(m.col(b));
}
// row_dst -= q * row_src
void row_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t q) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(dst, j) = checked_add(m(dst, j), -checked_mul(q, m(src, j)));
}
void col_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t q) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, dst) = checked_add(m(i, dst), -checked_mul(q, m(i, src)));
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  SmithForm f;
  f.diag = a;
  f.left = IntMatrix::Identity(rows, rows);
  f.right = IntMatrix::Identity(cols, cols);
  IntMatrix& s = f.diag;
  const Eigen::Index steps = std::min(rows, cols);

  for (Eigen::Index t = 0; t < steps; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (s(i, j) != 0 && (pi < 0 || std::llabs(s(i, j)) < std::llabs(s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(s, t, pi);
    swap_rows(f.left, t, pi);
    swap_cols(s, t, pj);
    swap_cols(f.right, t, pj);

    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        const std::int64_t q = s(i, t) / s(t, t);
        row_axpy(s, i, t, q);
        row_axpy(f.left, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        const std::int64_t q = s(t, j) / s(t, t);
        col_axpy(s, j, t, q);
        col_axpy(f.right, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t to the pivot.
        Eigen::Index bi = t, bj = t;
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (s(i, t) != 0 && std::llabs(s(i, t)) < std::llabs(s(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (s(t, j) != 0 && std::llabs(s(t, j)) < std::llabs(s(bi, bj))) {
            bi = t;
            bj = j;
          }
        swap_rows(s, t, bi);
        swap_rows(f.left, t, bi);
        swap_cols(s, t, bj);
        swap_cols(f.right, t, bj);
        continue;
      }
      // Divisibility: fold any offending row into row t and repeat.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(s, t, bad, -1);
      row_axpy(f.left, t, bad, -1);
    }
    if (s(t, t) < 0) {
      s.row(t) *= -1;
      f.left.row(t) *= -1;
    }
    ++f.rank;
  }
  return f;
}

std::optional<Rational> reconstruct_rational(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x) || std::fabs(x) > 1e12) return std::nullopt;
  // Continued-fraction convergents h/k.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  Rational best{static_cast<std::int64_t>(std::llround(x)), 1};
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    best = Rational{h2, k2};
    if (std::fabs(x - best.value()) <= tol * 1e-3) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (std::fabs(x - best.value()) > tol) return std::nullopt;
  const std::int64_t g = gcd64(best.num, best.den);
  if (g > 1) {
    best.num /= g;
    best.den /= g;
  }
  return best;
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
  // Faddeev-LeVerrier; every division is exact over the integers.
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "characteristic polynomial");
  const Eigen::Index n = a.rows();
  IntPoly c(static_cast<std::size_t>(n + 1), 0);
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    IntMatrix next = int_multiply(a, m);
    for (Eigen::Index i = 0; i < n; ++i) next(i, i) = checked_add(next(i, i), c[static_cast<std::size_t>(n - k + 1)]);
    m = next;
    IntMatrix am = int_multiply(a, m);
    std::int64_t tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr = checked_add(tr, am(i, i));
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return c;
}

namespace {

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

}  // namespace

std::optional<IntPoly> poly_divide_exact(const IntPoly& p, const IntPoly& divisor) {
  IntPoly rem = p;
  trim(rem);
  IntPoly d = divisor;
  trim(d);
  if (d.empty() || (d.size() == 1 && d[0] == 0)) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  if (rem.size() < d.size()) {
    if (rem.size() == 1 && rem[0] == 0) return IntPoly{0};
    return std::nullopt;
  }
  const std::int64_t lead = d.back();
  IntPoly q(rem.size() - d.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const std::int64_t top = rem[i + d.size() - 1];
    if (top % lead != 0) return std::nullopt;
    const std::int64_t coef = top / lead;
    q[i] = coef;
    for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] = checked_add(rem[i + j], -checked_mul(coef, d[j]));
  }
  for (std::int64_t r : rem)
    if (r != 0) return std::nullopt;
  return q;
}

int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPoly cyclotomic_polynomial(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  IntPoly p(static_cast<std::size_t>(m + 1), 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto q = poly_divide_exact(p, cyclotomic_polynomial(d));
    p = *q;
  }
  return p;
}

CyclotomicSplit strip_cyclotomic_factors(const IntPoly& p) {
  CyclotomicSplit out;
  out.leftover = p;
  trim(out.leftover);
  const int degree = static_cast<int>(out.leftover.size()) - 1;
  // phi(m) >= sqrt(m/2), so phi(m) <= degree forces m <= 2 degree^2.
  const int bound = 2 * degree * degree + 2;
  for (int m = 1; m <= bound; ++m) {
    if (euler_phi(m) > degree) continue;
    const IntPoly phi = cyclotomic_polynomial(m);
    for (;;) {
      if (out.leftover.size() < phi.size()) break;
      auto q = poly_divide_exact(out.leftover, phi);
      if (!q) break;
      out.leftover = *q;
      out.removed.push_back(m);
    }
  }
  return out;
}

}  // namespace twisted
