// Times the two data-parallel kernels (random-POVM dominance search and the
// disturbance-grid sweep) against their serial reference implementations and
// checks that both paths agree exactly.

#include "eveopt/oracle.hpp"
#include "eveopt/sweep.hpp"

#include <cstdio>
#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#else
#include <chrono>
#endif

namespace {

double now_seconds() {
#if defined(_OPENMP)
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eveopt;
  const int trials = argc > 1 ? std::atoi(argv[1]) : 200000;
  const int sweep_steps = argc > 2 ? std::atoi(argv[2]) : 17;

  const DisturbancePair d{0.25, 0.25};
  const InteractionVectors iv = make_interaction(Family::General, d);
  const JointStates js = joint_states(iv, d, false);
  const Operator rho_x = eve_density(js, Signal::X);
  const Operator rho_y = eve_density(js, Signal::Y);
  const SampleConfig cfg{7, trials};

#if defined(_OPENMP)
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  double t0 = now_seconds();
  const double serial = max_gain_search_serial(rho_x, rho_y, cfg);
  double t1 = now_seconds();
  const double parallel = max_gain_search(rho_x, rho_y, cfg);
  double t2 = now_seconds();
  std::printf("dominance search, %d trials: serial %.3fs  parallel %.3fs  speedup %.2fx\n",
              trials, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1));
  if (serial != parallel) {
    std::printf("MISMATCH: serial %.17g vs parallel %.17g\n", serial, parallel);
    return 1;
  }

  SweepConfig sc;
  sc.dmin = 0.05;
  sc.dmax = 0.45;
  sc.steps = sweep_steps;
  sc.parallel = false;
  t0 = now_seconds();
  const auto rows_serial = sweep_grid(sc);
  t1 = now_seconds();
  sc.parallel = true;
  const auto rows_parallel = sweep_grid(sc);
  t2 = now_seconds();
  std::printf("grid sweep, %dx%d points: serial %.3fs  parallel %.3fs  speedup %.2fx\n",
              sweep_steps, sweep_steps, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1));
  for (std::size_t i = 0; i < rows_serial.size(); ++i) {
    if (rows_serial[i].g_achieved != rows_parallel[i].g_achieved ||
        rows_serial[i].i_achieved != rows_parallel[i].i_achieved) {
      std::printf("MISMATCH at row %zu\n", i);
      return 1;
    }
  }
  std::printf("serial and parallel kernels agree exactly\n");
  return 0;
}
