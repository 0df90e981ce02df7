// Verification sweeps with one thread and with all threads: bench_sweeps --benchmark_filter=...
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "dms/bundled.hpp"
#include "dms/crooked.hpp"
#include "dms/hyperbolic.hpp"
#include "dms/margulis.hpp"
#include "dms/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dms;

namespace {

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
#else
  (void)n;
#endif
}

Vec21 point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0, 2 * M_PI), r(0, 5);
  const double t = a(rng), s = r(rng);
  return {std::sinh(s) * std::cos(t), std::sinh(s) * std::sin(t), std::cosh(s)};
}

void BM_distance_sweep(benchmark::State& st) {
  set_threads(int(st.range(0)));
  std::mt19937_64 rng(1);
  std::vector<std::pair<HypPoint, HypPoint>> pts;
  for (int i = 0; i < 10000; ++i) pts.push_back({make_point(point(rng)), make_point(point(rng))});
  for (auto _ : st) {
    auto e = parallel_map<double>(int(pts.size()), [&](int i) {
      return std::fabs(dist(pts[i].first, pts[i].second) - dist_hilbert(pts[i].first, pts[i].second));
    });
    benchmark::DoNotOptimize(e.data());
  }
}

void BM_fd_sweep(benchmark::State& st) {
  set_threads(int(st.range(0)));
  const auto ex = bundled("spiked_annulus_1_1");
  const auto& s = ex.surface;
  const TangentVector t = strip_map(s, ex.family);
  const auto conns = enumerate_horoball_connections(s, 6, 14.0);
  const Tiling tl = tiles(s, ex.family.arcs);
  const TileMap m = tile_map(s, tl, ex.family.arcs, ex.family.weights, default_template(s, ex.family.arcs));
  for (auto _ : st) {
    auto e = parallel_map<double>(int(conns.size()), [&](int i) {
      return dl_connection(s, t, conns[i]) - dl_horoball_fd(s, tl, m, conns[i]);
    });
    benchmark::DoNotOptimize(e.data());
  }
  st.counters["connections"] = double(conns.size());
}

void BM_crooked_sampling(benchmark::State& st) {
  set_threads(int(st.range(0)));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::pair<CrookedPlane, CrookedPlane>> pairs;
  while (pairs.size() < 64) {
    const auto plane = [&] {
      Vec21 n;
      do n = {u(rng), u(rng), 0.5 * u(rng)};
      while (bilinear(n, n) < 0.05);
      return make_crooked_plane({u(rng), u(rng), u(rng)}, n);
    };
    const CrookedPlane a = plane(), b = plane();
    if (std::fabs(bilinear(a.v, b.v)) > 1.05) pairs.push_back({a, b});
  }
  for (auto _ : st) {
    auto r = parallel_map<int>(int(pairs.size()), [&](int i) {
      return int(crooked_disjointness(pairs[i].first, pairs[i].second, 1000).sampled);
    });
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

// argument: thread count, 0 = all processors
BENCHMARK(BM_distance_sweep)->Arg(1)->Arg(0)->UseRealTime();
BENCHMARK(BM_fd_sweep)->Arg(1)->Arg(0)->UseRealTime();
BENCHMARK(BM_crooked_sampling)->Arg(1)->Arg(0)->UseRealTime();

BENCHMARK_MAIN();
