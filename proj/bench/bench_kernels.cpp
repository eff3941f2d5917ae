// Wall-clock comparison of the serial reference loops and the OpenMP kernels.
//
//   bench_kernels [--points N] [--dim D] [--repeats R]
//
// Thread count follows OMP_NUM_THREADS.

#include "graphssr/contraction.hpp"
#include "graphssr/experiment.hpp"
#include "graphssr/kernels.hpp"
#include "graphssr/rng.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace graphssr;

namespace {

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  Index points = 1500;
  Index dim = 784;
  int repeats = 3;
  app.add_option("--points", points, "Point cloud size");
  app.add_option("--dim", dim, "Ambient dimension");
  app.add_option("--repeats", repeats, "Timed repetitions (best is reported)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads %d, %ld points in R^%ld, best of %d\n", omp_get_max_threads(),
              static_cast<long>(points), static_cast<long>(dim), repeats);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial[s]", "omp[s]", "speedup");

  Rng rng(1);
  const Matrix x = uniform01(points, dim, rng);

  Matrix ds, dp;
  const double t_ds = best_of(repeats, [&] { ds = kernels::serial::pairwise_sq_distances(x); });
  const double t_dp = best_of(repeats, [&] { dp = kernels::omp::pairwise_sq_distances(x); });
  row("pairwise distances", t_ds, t_dp, ds == dp);

  Vector rs, rp;
  const double t_rs = best_of(repeats, [&] { rs = kernels::serial::kth_neighbor_radius(ds, 15); });
  const double t_rp = best_of(repeats, [&] { rp = kernels::omp::kth_neighbor_radius(ds, 15); });
  row("k-th neighbor radius", t_rs, t_rp, rs == rp);

  Matrix ws, wp;
  const double t_ws = best_of(repeats, [&] { ws = kernels::serial::self_tuning_weights(ds, rs); });
  const double t_wp = best_of(repeats, [&] { wp = kernels::omp::self_tuning_weights(ds, rs); });
  row("self-tuning weights", t_ws, t_wp, ws == wp);

  const Vector deg = ws.rowwise().sum();
  Matrix ls, lp;
  const double t_ls =
      best_of(repeats, [&] { ls = kernels::serial::normalized_laplacian(ws, deg, 0.5); });
  const double t_lp =
      best_of(repeats, [&] { lp = kernels::omp::normalized_laplacian(ws, deg, 0.5); });
  row("normalized Laplacian", t_ls, t_lp, ls == lp);

  SyntheticSpec syn;
  syn.cluster_size = 60;
  const SyntheticData d = generate_synthetic(syn);
  const Dataset data = FamilyDataset{d.family, d.clustering};
  SweepSpec spec;
  spec.eps = log_grid(-1, -12, 0.5);
  spec.gamma = log_grid(-1, -6, 0.5);
  spec.alpha = {0.5, 1.0, 5.0};
  spec.p = 0.5;
  SweepResult ss, sp;
  const double t_ss = best_of(repeats, [&] { ss = run_sweep(spec, data, Execution::serial); });
  const double t_sp = best_of(repeats, [&] { sp = run_sweep(spec, data, Execution::parallel); });
  bool same = ss.cells.size() == sp.cells.size();
  for (std::size_t i = 0; same && i < ss.cells.size(); ++i)
    same = ss.cells[i].report.total == sp.cells[i].report.total;
  row("sweep (180 vertices)", t_ss, t_sp, same);

  const SweepProblem prob = sweep_problem(data, 0.5, std::nullopt);
  const PriorModel prior = prior_covariance(
      eigendecompose(degree_and_laplacian(assemble_perturbed(d.family, 1e-3), 0.5)), 0.03, 1.0);
  McEstimate ms, mp;
  const double t_ms = best_of(repeats, [&] {
    ms = contraction_monte_carlo(prior, prob.labels, prob.truth, 1e-2, 4000, 5, McVariant::rao,
                                 Execution::serial);
  });
  const double t_mp = best_of(repeats, [&] {
    mp = contraction_monte_carlo(prior, prob.labels, prob.truth, 1e-2, 4000, 5, McVariant::rao,
                                 Execution::parallel);
  });
  row("Monte Carlo (4000)", t_ms, t_mp, ms.mean == mp.mean && ms.std_error == mp.std_error);
  return 0;
}
