#include "twisted/twisted_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "twisted/error.hpp"
#include "twisted/linalg.hpp"
#include "twisted/random.hpp"

namespace twisted {

namespace {

constexpr double kInverseGolden = 0.6180339887498949;

Matrix tau(const Automorphism& s, const Matrix& g, const Matrix& h) { return twisted_conjugate_matrix(s, g, h); }

std::vector<Matrix> normalised_basis(const FixedTorus& t) {
  std::vector<Matrix> out;
  for (const auto& h : t.t_basis) out.push_back(h.matrix / h.matrix.norm());
  return out;
}

}  // namespace

MembershipTest is_in_Zsigma(const Matrix& g, const FixedTorus& t, const Automorphism& s, double tol) {
  MembershipTest out;
  out.residual = (s.apply_matrix(g) - g).norm();
  for (int i = 0; i < t.rank; ++i)
    for (double scale : {1.0, kInverseGolden}) {
      RealVector theta = RealVector::Zero(t.rank);
      theta(i) = scale;
      const Matrix x = t.element(theta);
      out.residual = std::max(out.residual, (tau(s, g, x) - x).norm());
    }
  out.member = out.residual < tol;
  return out;
}

MembershipTest is_in_Nsigma(const Matrix& g, const FixedTorus& t, const Automorphism& s, double tol) {
  MembershipTest out;
  out.residual = t.log(g * s.apply_matrix(g).adjoint()).residual;
  for (const auto& h : normalised_basis(t))
    out.residual = std::max(out.residual, t.project_out(g * h * g.adjoint()).norm());
  out.member = out.residual < tol;
  return out;
}

AffineAction affine_action(const Matrix& g, const FixedTorus& t, const Automorphism& s) {
  AffineAction out;
  out.linear = IntMatrix::Zero(t.rank, t.rank);
  for (int j = 0; j < t.rank; ++j) {
    const RealVector c = t.t_coordinates(g * t.t_basis[static_cast<std::size_t>(j)].matrix * g.adjoint());
    for (int i = 0; i < t.rank; ++i) out.linear(i, j) = std::llround(c(i));
  }
  out.translation = t.log(g * s.apply_matrix(g).adjoint()).theta;
  return out;
}

Permutation induced_permutation(const Matrix& g, const FixedTorus& t, const Automorphism& s,
                                const std::vector<TorsionPoint>& points, int n) {
  Permutation p(points.size(), -1);
  std::vector<char> hit(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int j = torsion_index(t, n, tau(s, g, points[i].element.matrix), 1e-6);
    if (j < 0 || static_cast<std::size_t>(j) >= points.size() || hit[static_cast<std::size_t>(j)]) return {};
    hit[static_cast<std::size_t>(j)] = 1;
    p[i] = j;
  }
  return p;
}

namespace {

// Residual of the normaliser equations (plus optional target conditions)
// and its Jacobian for the left perturbation y -> exp(X) y.
class NormaliserResidual {
 public:
  NormaliserResidual(const Automorphism& s, const FixedTorus& t, std::vector<std::pair<Matrix, Matrix>> targets)
      : s_(s), t_(t), hs_(normalised_basis(t)), targets_(std::move(targets)) {
    for (const auto& e : s.group().algebra_basis()) {
      basis_.push_back(e);
      dbasis_.push_back(s.apply_algebra(e));
    }
  }

  void evaluate(const Matrix& y, RealVector& r, RealMatrix* jac) const {
    std::vector<Matrix> blocks;
    std::vector<std::vector<Matrix>> dblocks(basis_.size());
    std::vector<Matrix> conj;
    for (const auto& h : hs_) {
      const Matrix a = y * h * y.adjoint();
      conj.push_back(a);
      blocks.push_back(t_.project_out(a));
    }
    const Matrix z = y * s_.apply_matrix(y).adjoint();
    const TorusLog lg = t_.log(z);
    const Matrix pz = t_.element(lg.theta);
    blocks.push_back(z - pz);
    std::vector<Matrix> images;
    for (const auto& tg : targets_) {
      const Matrix w = tau(s_, y, tg.first);
      images.push_back(w);
      blocks.push_back(w - tg.second);
    }
    r = realify_columns(blocks).reshaped();
    if (!jac) return;

    const Matrix& u = t_.eigenbasis;
    const Eigen::VectorXcd zd = (u.adjoint() * z * u).diagonal();
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const Matrix& e = basis_[k];
      std::vector<Matrix> d;
      for (const auto& a : conj) d.push_back(t_.project_out(e * a - a * e));
      const Matrix dz = e * z - z * dbasis_[k];
      RealVector dtheta = RealVector::Zero(t_.rank);
      if (t_.rank > 0) {
        const Eigen::VectorXcd dd = (u.adjoint() * dz * u).diagonal();
        RealVector dphi(dd.size());
        for (Eigen::Index m = 0; m < dd.size(); ++m)
          dphi(m) = std::abs(zd(m)) > 1e-8 ? (dd(m) / zd(m)).imag() : 0.0;
        dtheta = t_.log_inverse.cast<double>() * dphi;
      }
      d.push_back(dz - pz * t_.algebra(dtheta));
      for (const auto& w : images) d.push_back(e * w - w * dbasis_[k]);
      const RealVector col = realify_columns(d).reshaped();
      if (k == 0) jac->resize(col.size(), static_cast<Eigen::Index>(basis_.size()));
      jac->col(static_cast<Eigen::Index>(k)) = col;
    }
  }

 private:
  const Automorphism& s_;
  const FixedTorus& t_;
  std::vector<Matrix> hs_;
  std::vector<std::pair<Matrix, Matrix>> targets_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> dbasis_;
};

std::optional<Matrix> levenberg_marquardt(const NormaliserResidual& f, const GroupDescriptor& group, Matrix y,
                                          const SearchConfig& config) {
  const auto& basis = group.algebra_basis();
  if (basis.empty()) return y;
  RealVector r;
  RealMatrix j;
  f.evaluate(y, r, &j);
  double value = r.squaredNorm();
  double lambda = 1e-3;
  // A few extra steps once accepted: the quadratic tail takes the residual
  // from the acceptance level down to rounding.
  int polish = 0;
  for (int it = 0; it < config.max_iterations && value > 1e-28; ++it) {
    if (value < config.accept && ++polish > 4) break;
    const RealMatrix jtj = j.transpose() * j;
    const RealVector jr = j.transpose() * r;
    bool accepted = false;
    while (lambda < 1e8) {
      RealMatrix a = jtj;
      a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const RealVector step = a.ldlt().solve(-jr);
      Matrix x = Matrix::Zero(group.ambient_size(), group.ambient_size());
      for (std::size_t k = 0; k < basis.size(); ++k) x += step(static_cast<Eigen::Index>(k)) * basis[k];
      const Matrix candidate = retract(group, exp_anti_hermitian(x) * y);
      RealVector rc;
      f.evaluate(candidate, rc, nullptr);
      if (rc.squaredNorm() < value) {
        y = candidate;
        f.evaluate(y, r, &j);
        value = r.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  if (value >= config.accept) return std::nullopt;
  return y;
}

std::vector<Matrix> catalog(const GroupDescriptor& group, const std::vector<TorsionPoint>& points) {
  const int n = group.ambient_size();
  std::vector<Matrix> out;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 6) {
    do {
      const int signs = n <= 4 ? (1 << n) : 1;
      for (int mask = 0; mask < signs; ++mask) {
        Matrix m = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = (mask >> i) & 1 ? -1.0 : 1.0;
        out.push_back(m);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Complex units[4] = {1.0, Complex(0.0, 1.0), -1.0, Complex(0.0, -1.0)};
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 4;
    for (int code = 0; code < total; ++code) {
      Matrix m = Matrix::Zero(n, n);
      int c = code;
      for (int i = 0; i < n; ++i, c /= 4) m(i, i) = units[c % 4];
      out.push_back(m);
    }
  }
  for (const auto& p : points) out.push_back(p.element.matrix);
  return out;
}

struct Accepted {
  Matrix g;
  std::string origin;
};

void absorb(std::vector<WeylGenerator>& gens, std::set<Permutation>& seen, const Accepted& a, const Automorphism& s,
            const FixedTorus& t, const std::vector<TorsionPoint>& points, int n, const SearchConfig& config) {
  if (!contains(s.group(), a.g).member) return;
  if (!is_in_Nsigma(a.g, t, s, config.membership_tol).member) return;
  Permutation p = induced_permutation(a.g, t, s, points, n);
  if (p.empty() || !seen.insert(p).second) return;
  gens.push_back(WeylGenerator{GroupElement{a.g, s.group()}, std::move(p), affine_action(a.g, t, s), a.origin});
}

std::vector<std::optional<Matrix>> run_restarts(const Automorphism& s, const FixedTorus& t,
                                                const std::vector<std::pair<Matrix, Matrix>>& targets,
                                                const std::vector<Matrix>& starts, int count, std::uint64_t seed,
                                                const SearchConfig& config) {
  const NormaliserResidual f(s, t, targets);
  const GroupDescriptor& group = s.group();
  std::vector<std::optional<Matrix>> found(static_cast<std::size_t>(count));
  for_each_index(config.execution, 0, count, [&](int i) {
    const Matrix start = static_cast<std::size_t>(i) < starts.size()
                             ? starts[static_cast<std::size_t>(i)]
                             : random_element(group, derive_seed(seed, 0x5ea4, static_cast<std::uint64_t>(i))).matrix;
    found[static_cast<std::size_t>(i)] = levenberg_marquardt(f, group, start, config);
  });
  return found;
}

std::set<Permutation> permutations_of(const std::vector<WeylGenerator>& gens) {
  std::set<Permutation> out;
  for (const auto& g : gens) out.insert(g.permutation);
  return out;
}

}  // namespace

std::vector<WeylGenerator> find_weyl_generators(const Automorphism& s, const FixedTorus& t,
                                                const std::vector<TorsionPoint>& points, int n, std::uint64_t seed,
                                                const SearchConfig& config) {
  const GroupDescriptor& group = s.group();
  std::vector<WeylGenerator> gens;
  std::set<Permutation> seen;
  const Matrix e = Matrix::Identity(group.ambient_size(), group.ambient_size());
  absorb(gens, seen, Accepted{e, "catalog"}, s, t, points, n, config);
  if (config.catalog)
    for (const auto& m : catalog(group, points)) absorb(gens, seen, Accepted{retract(group, m), "catalog"}, s, t, points, n, config);
  for (const auto& m : run_restarts(s, t, {}, {}, config.budget, seed, config))
    if (m) absorb(gens, seen, Accepted{*m, "search"}, s, t, points, n, config);
  return gens;
}

std::vector<WeylGenerator> targeted_generators(const Automorphism& s, const FixedTorus& t,
                                               const std::vector<TorsionPoint>& points, int n,
                                               const std::vector<std::pair<int, int>>& pairs,
                                               const std::vector<Matrix>& starts, std::uint64_t seed,
                                               const SearchConfig& config) {
  std::vector<WeylGenerator> gens;
  std::set<Permutation> seen;
  const int per_pair = std::max(1, config.budget / 8);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    const std::vector<std::pair<Matrix, Matrix>> target{
        {points[static_cast<std::size_t>(a)].element.matrix, points[static_cast<std::size_t>(b)].element.matrix}};
    std::vector<Matrix> seeds;
    if (k < starts.size()) seeds.push_back(starts[k]);
    for (const auto& m : run_restarts(s, t, target, seeds, per_pair + static_cast<int>(seeds.size()),
                                      derive_seed(seed, 0x7a26, k), config))
      if (m) absorb(gens, seen, Accepted{*m, "targeted"}, s, t, points, n, config);
  }
  return gens;
}

PermutationClosure close_permutations(const std::vector<Permutation>& generators, std::size_t size,
                                      std::size_t cap) {
  PermutationClosure out;
  Permutation id(size);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> group{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : generators) {
        Permutation q(size);
        for (std::size_t i = 0; i < size; ++i) q[i] = g[static_cast<std::size_t>(p[i])];
        if (group.insert(q).second) {
          if (group.size() > cap) throw Error(ErrorKind::ClosureExplosion, "permutation group exceeds the order bound");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  out.order = group.size();

  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& g : generators)
    for (std::size_t i = 0; i < size; ++i) {
      const int a = find(static_cast<int>(i)), b = find(g[i]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, int> slot;
  out.orbit_of.assign(size, -1);
  for (std::size_t i = 0; i < size; ++i) {
    const int root = find(static_cast<int>(i));
    auto it = slot.find(root);
    if (it == slot.end()) {
      it = slot.emplace(root, static_cast<int>(out.orbits.size())).first;
      out.orbits.emplace_back();
    }
    out.orbits[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    out.orbit_of[i] = it->second;
  }
  return out;
}

TwistedWeylGroup close_and_partition(const std::vector<WeylGenerator>& generators, const Automorphism& s,
                                     const std::vector<TorsionPoint>& points, std::uint64_t seed,
                                     const OracleConfig& oracle) {
  TwistedWeylGroup w;
  w.generators = generators;
  std::vector<Permutation> perms;
  for (const auto& g : generators) perms.push_back(g.permutation);
  const PermutationClosure c = close_permutations(perms, points.size());
  w.order = c.order;
  w.orbits = c.orbits;
  w.orbit_of = c.orbit_of;

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < w.orbits.size(); ++a)
    for (std::size_t b = a + 1; b < w.orbits.size(); ++b) pairs.emplace_back(w.orbits[a].front(), w.orbits[b].front());
  w.oracle.resize(pairs.size());
  OracleConfig inner = oracle;
  inner.execution = Execution::Serial;
  for_each_index(oracle.execution, 0, static_cast<int>(pairs.size()), [&](int k) {
    const auto [a, b] = pairs[static_cast<std::size_t>(k)];
    w.oracle[static_cast<std::size_t>(k)] =
        OracleRecord{a, b,
                     are_sigma_conjugate(points[static_cast<std::size_t>(a)].element,
                                         points[static_cast<std::size_t>(b)].element, s,
                                         derive_seed(seed, 0x0c1a, static_cast<std::uint64_t>(k)), inner)};
  });
  for (const auto& rec : w.oracle) {
    if (rec.decision.verdict == Verdict::Undecided) w.unresolved.emplace_back(rec.first, rec.second);
    if (rec.decision.verdict == Verdict::Conjugate) w.joined.emplace_back(rec.first, rec.second);
  }
  w.saturated = w.unresolved.empty() && w.joined.empty();
  return w;
}

TwistedWeylGroup build_twisted_weyl(const Automorphism& s, const FixedTorus& t,
                                    const std::vector<TorsionPoint>& points, int n, std::uint64_t seed,
                                    const SearchConfig& search, const OracleConfig& oracle) {
  auto gens = find_weyl_generators(s, t, points, n, seed, search);
  TwistedWeylGroup w = close_and_partition(gens, s, points, seed, oracle);
  if (w.joined.empty()) return w;

  SearchConfig wider = search;
  wider.budget = 2 * search.budget;
  wider.catalog = false;
  std::vector<WeylGenerator> extra = find_weyl_generators(s, t, points, n, derive_seed(seed, 0x2d, 1), wider);
  std::vector<Matrix> starts;
  for (const auto& pr : w.joined)
    for (const auto& rec : w.oracle)
      if (rec.first == pr.first && rec.second == pr.second && rec.decision.witness)
        starts.push_back(rec.decision.witness->matrix);
  for (auto& g : targeted_generators(s, t, points, n, w.joined, starts, derive_seed(seed, 0x2d, 2), wider))
    extra.push_back(std::move(g));
  std::set<Permutation> seen = permutations_of(gens);
  for (auto& g : extra)
    if (seen.insert(g.permutation).second) gens.push_back(std::move(g));
  w = close_and_partition(gens, s, points, seed, oracle);
  w.search_rounds = 2;
  return w;
}

}  // namespace twisted
