// Wall-clock comparison of the OpenMP kernels against their serial
// references, plus a sampler throughput line. Results must agree bit for
// bit; only the timings differ.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nurs/couple.hpp"
#include "nurs/exact.hpp"

using namespace nurs;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial, double parallel, bool identical) {
  std::printf("%-28s %9.3fs %9.3fs %7.2fx   %s\n", name.c_str(), serial, parallel,
              serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    const MallowsModel model = MallowsModel::make(5, 0.5, DistanceKind::Kendall);
    const NursParams params{0.01, 4};
    TransitionMatrix a, b;
    const double ts =
        time_of([&] { a = serial::nurs_matrix(model, DirectionLaw::uniform(), params); });
    const double tp = time_of([&] { b = nurs_matrix(model, DirectionLaw::uniform(), params); });
    row("nurs_matrix n=5 uniform M=4", ts, tp, a.entries == b.entries);
  }
  {
    const MallowsModel model = MallowsModel::make(5, 0.7, DistanceKind::Cayley);
    TransitionMatrix a, b;
    const double ts = time_of([&] { a = serial::shiftable_matrix(model); });
    const double tp = time_of([&] { b = shiftable_matrix(model); });
    row("shiftable_matrix n=5", ts, tp, a.entries == b.entries);

    const ExactPmf pmf = exact_pmf(model);
    std::vector<double> ca, cb;
    const double cs = time_of([&] { ca = serial::tv_mixing_curve(a, pmf, 500); });
    const double cp = time_of([&] { cb = tv_mixing_curve(a, pmf, 500); });
    row("tv_mixing_curve t=500", cs, cp, ca == cb);
  }
  {
    const MallowsModel model = MallowsModel::make(6, 0.05, DistanceKind::Cayley);
    const EdgePair edge{Permutation::identity(6), 2, 5};
    ContractionReport a, b;
    Rng r1(7), r2(7);
    const double ts =
        time_of([&] { a = serial::edge_contraction_experiment(edge, model, 400000, r1); });
    const double tp = time_of([&] { b = edge_contraction_experiment(edge, model, 400000, r2); });
    row("edge_contraction 4e5 draws", ts, tp,
        a.empirical_mean_dist == b.empirical_mean_dist && a.std_error == b.std_error);
  }
  {
    const MallowsModel model = MallowsModel::make(200, 1.0, DistanceKind::Cayley);
    const DirectionLaw law = DirectionLaw::local_cycle(7);
    const NursParams params{0.01, 7};
    Rng rng(1);
    Permutation state = model.sigma0;
    const int iters = 20000;
    const double t = time_of([&] {
      for (int it = 0; it < iters; ++it) state = nurs_step(state, model, law, params, rng).first;
    });
    std::printf("sampler n=200 local:7 beta=1: %.0f iters/s\n", iters / t);
  }
  return 0;
}
