// Serial vs OpenMP timing for the multi-start kernels: oracle restarts, the
// Weyl generator search, and a full H^1 computation. Results must agree
// exactly.
#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>

#include "twisted/cohomology.hpp"

using namespace twisted;

namespace {

double time_it(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  // A conjugate pair with an unreachable tolerance, so all restarts run.
  const GroupDescriptor u3 = make_group(FamilySpec::unitary(3));
  const Automorphism id = Automorphism::identity(u3);
  const GroupElement a = random_element(u3, 11);
  const GroupElement b = twisted_conjugate(random_element(u3, 12), a, id);
  OracleConfig serial, parallel;
  serial.execution = Execution::Serial;
  serial.restarts = parallel.restarts = 64;
  serial.witness_tol = parallel.witness_tol = 1e-30;
  ConjugacyDecision ds, dp;
  const double ts = time_it([&] { ds = are_sigma_conjugate(a, b, id, 5, serial); }, 3);
  const double tp = time_it([&] { dp = are_sigma_conjugate(a, b, id, 5, parallel); }, 3);
  report("oracle, 64 restarts", ts, tp, ds.best_residual == dp.best_residual && ds.restarts_used == dp.restarts_used);

  const Automorphism conj = Automorphism::antihol(u3, Matrix::Identity(3, 3));
  const FixedTorus t = maximal_torus_in_fixed(conj, 0);
  const auto points = torsion_points(t, 4);
  SearchConfig ss, sp;
  ss.execution = Execution::Serial;
  ss.budget = sp.budget = 128;
  std::vector<WeylGenerator> gs, gp;
  const double gs_t = time_it([&] { gs = find_weyl_generators(conj, t, points, 4, 3, ss); }, 3);
  const double gp_t = time_it([&] { gp = find_weyl_generators(conj, t, points, 4, 3, sp); }, 3);
  bool same = gs.size() == gp.size();
  for (std::size_t i = 0; same && i < gs.size(); ++i) same = gs[i].permutation == gp[i].permutation;
  report("generator search, B=128", gs_t, gp_t, same);

  H1Config hs, hp;
  hs.oracle.execution = hs.search.execution = Execution::Serial;
  CohomologyResult rs = compute_h1(id, 4, hs), rp = compute_h1(id, 4, hp);
  const double hs_t = time_it([&] { rs = compute_h1(id, 4, hs); }, 2);
  const double hp_t = time_it([&] { rp = compute_h1(id, 4, hp); }, 2);
  report("compute_h1 U(3) id n=4", hs_t, hp_t, rs.partition() == rp.partition());
  return 0;
}
