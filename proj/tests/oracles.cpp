#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace oracle {

std::int64_t multisets(int m, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (m + i - 1) / i;
  return r;
}

std::int64_t unitary_torsion_classes(int N, int n) { return multisets(n, N); }

std::int64_t special_unitary_torsion_classes(int N, int n) {
  // Nondecreasing exponent sequences e_1 <= ... <= e_N in [0, n) with
  // sum = 0 mod n.
  std::int64_t count = 0;
  std::function<void(int, int, int)> walk = [&](int pos, int lo, int sum) {
    if (pos == N) {
      if (sum % n == 0) ++count;
      return;
    }
    for (int e = lo; e < n; ++e) walk(pos + 1, e, sum + e);
  };
  walk(0, 0, 0);
  return count;
}

std::int64_t so3_torsion_classes(int n) { return n / 2 + 1; }

std::vector<std::pair<double, double>> spectrum_key(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<std::pair<double, double>> v;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex z = es.eigenvalues()(i);
    v.emplace_back(std::round(z.real() * 1e6) / 1e6 + 0.0, std::round(z.imag() * 1e6) / 1e6 + 0.0);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> partition_by_spectrum(const std::vector<Matrix>& ms) {
  std::map<std::vector<std::pair<double, double>>, int> seen;
  std::vector<int> out;
  for (std::size_t i = 0; i < ms.size(); ++i) out.push_back(seen.emplace(spectrum_key(ms[i]), static_cast<int>(i)).first->second);
  return canonical(out);
}

std::vector<int> canonical(const std::vector<int>& labels) {
  std::map<int, int> relabel;
  std::vector<int> out;
  for (int l : labels) out.push_back(relabel.emplace(l, static_cast<int>(relabel.size())).first->second);
  return out;
}

Matrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

}  // namespace oracle
