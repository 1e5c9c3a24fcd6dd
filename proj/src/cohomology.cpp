#include "twisted/cohomology.hpp"

#include <map>

#include "twisted/error.hpp"
#include "twisted/integer_lattice.hpp"
#include "twisted/random.hpp"

namespace twisted {

const char* to_string(Status s) { return s == Status::Complete ? "complete" : "incomplete"; }

std::vector<int> CohomologyResult::partition() const {
  std::vector<int> out(points.size(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int m : classes[c].members) out[static_cast<std::size_t>(m)] = static_cast<int>(c);
  return out;
}

CocycleCheck cocycle_norm_check(const GroupElement& z, const Automorphism& s, int n, double tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  Matrix product = Matrix::Identity(z.matrix.rows(), z.matrix.cols());
  Matrix term = z.matrix;
  for (int k = 0; k < n; ++k) {
    product = product * term;
    term = s.apply_matrix(term);
  }
  CocycleCheck out;
  out.residual = (product - Matrix::Identity(z.matrix.rows(), z.matrix.cols())).norm();
  out.cocycle = out.residual < tol;
  return out;
}

namespace {

void check_preconditions(const Automorphism& s, int n, double rank_threshold) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (!is_one_semisimple(s, rank_threshold))
    throw Error(ErrorKind::NotOneSemisimple, "ker(1 - dsigma) != ker((1 - dsigma)^2)");
  const AutomorphismOrder ord = order_of(s);
  if (!ord.finite) throw Error(ErrorKind::OrderMismatch, "automorphism has infinite order: " + ord.certificate);
  if (n % ord.n != 0)
    throw Error(ErrorKind::OrderMismatch,
                "order " + std::to_string(ord.n) + " of the automorphism does not divide n = " + std::to_string(n));
}

// Breadth-first spanning tree of one orbit, composing generator elements
// along the way: if tau_a(x) = y and tau_b(y) = w then tau_{ba}(x) = w.
std::vector<Witness> spanning_witnesses(const std::vector<int>& members, const TwistedWeylGroup& w,
                                        const std::vector<TorsionPoint>& points, const Automorphism& s) {
  std::vector<Witness> out;
  if (members.empty()) return out;
  const int root = members.front();
  std::map<int, Matrix> reach;
  reach.emplace(root, Matrix::Identity(s.group().ambient_size(), s.group().ambient_size()));
  std::vector<int> frontier{root};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (const auto& gen : w.generators) {
        const int y = gen.permutation[static_cast<std::size_t>(x)];
        if (reach.count(y)) continue;
        const Matrix g = gen.g.matrix * reach.at(x);
        reach.emplace(y, g);
        next.push_back(y);
        const Matrix img = twisted_conjugate_matrix(s, g, points[static_cast<std::size_t>(root)].element.matrix);
        out.push_back(Witness{root, y, GroupElement{g, s.group()},
                              (img - points[static_cast<std::size_t>(y)].element.matrix).norm()});
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

CohomologyResult compute_h1_on_torus(const Automorphism& s, const FixedTorus& t, int n, const H1Config& config) {
  check_preconditions(s, n, config.rank_threshold);
  CohomologyResult r{s.group(), s, n, t, torsion_points(t, n), {}, {}, {}, Status::Incomplete, {}};
  r.weyl = build_twisted_weyl(s, t, r.points, n, config.seed, config.search, config.oracle);
  for (const auto& orbit : r.weyl.orbits)
    r.classes.push_back(CohomologyClass{orbit.front(), orbit, spanning_witnesses(orbit, r.weyl, r.points, s)});
  bool witnesses_ok = true;
  for (const auto& c : r.classes)
    for (const auto& wit : c.witnesses)
      if (wit.residual > config.oracle.witness_tol) witnesses_ok = false;
  for (const auto& rec : r.weyl.oracle)
    if (rec.decision.verdict == Verdict::NotConjugate && rec.decision.certificate)
      r.certificates.push_back(Certificate{rec.first, rec.second, *rec.decision.certificate});
  r.unresolved = r.weyl.unresolved;
  for (const auto& p : r.weyl.joined) r.unresolved.push_back(p);
  r.status = r.weyl.saturated && witnesses_ok ? Status::Complete : Status::Incomplete;
  return r;
}

CohomologyResult compute_h1(const Automorphism& s, int n, const H1Config& config) {
  check_preconditions(s, n, config.rank_threshold);
  const FixedTorus t = maximal_torus_in_fixed(s, config.torus_seed.value_or(config.seed));
  return compute_h1_on_torus(s, t, n, config);
}

ConjugacyDecision decide_cohomologous_Z(const Automorphism& s, const GroupElement& t1, const GroupElement& t2,
                                        const H1Config& config) {
  if (!is_one_semisimple(s, config.rank_threshold))
    throw Error(ErrorKind::NotOneSemisimple, "ker(1 - dsigma) != ker((1 - dsigma)^2)");
  return are_sigma_conjugate(t1, t2, s, config.seed, config.oracle);
}

TorusCohomologyZ torus_cohomology_Z(const Automorphism& s, double rank_threshold) {
  if (s.group().family() != Family::Torus)
    throw Error(ErrorKind::UnsupportedFamily, "integer-action classification is implemented for Torus(k) only");
  if (!is_one_semisimple(s, rank_threshold))
    throw Error(ErrorKind::NotOneSemisimple, "ker(1 - dsigma) != ker((1 - dsigma)^2)");
  const RealMatrix d = differential(s);
  const Eigen::Index k = d.rows();
  IntMatrix a(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = (i == j ? 1 : 0) - std::llround(d(i, j));
  const SmithForm snf = smith_normal_form(a);
  TorusCohomologyZ out;
  out.dimension = static_cast<int>(k) - snf.rank;
  out.characters = snf.left.bottomRows(k - snf.rank);
  return out;
}

std::optional<int> classify(const CohomologyResult& result, const GroupElement& z, std::uint64_t seed) {
  for (std::size_t c = 0; c < result.classes.size(); ++c) {
    const auto& rep = result.points[static_cast<std::size_t>(result.classes[c].representative)].element;
    const ConjugacyDecision d = are_sigma_conjugate(z, rep, result.automorphism, derive_seed(seed, 0xc1a5, c));
    if (d.verdict == Verdict::Conjugate) return static_cast<int>(c);
  }
  return std::nullopt;
}

}  // namespace twisted
