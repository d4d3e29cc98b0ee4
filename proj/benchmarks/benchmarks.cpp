#include <benchmark/benchmark.h>

#include "a12/kvfcl.hpp"
#include "a12/root_system.hpp"

using namespace a12;

namespace {

std::shared_ptr<const CompactLieAlgebra> su3() {
  static auto g = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::su(3));
  return g;
}

Eigen::VectorXd interior(int n1, int n2, uint64_t seed) {
  Rng rng(seed);
  while (true) {
    Eigen::VectorXd c = rng.unit_vector(n1 + n2);
    if (c.head(n1).norm() > 0.1 && c.tail(n2).norm() > 0.1) return c;
  }
}

void BM_LJet(benchmark::State& state) {
  auto fam = GeneratingFamily::mroot(2);
  double u = 0.4, v = 0.6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fam.l_jet(u, v));
  }
}
BENCHMARK(BM_LJet);

void BM_FundamentalTensor(benchmark::State& state) {
  auto fam = GeneratingFamily::mroot(2);
  int n1 = static_cast<int>(state.range(0)), n2 = static_cast<int>(state.range(1));
  auto d = DatumDecomposition::standard(n1, n2);
  Eigen::VectorXd y = interior(n1, n2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fundamental_tensor(fam, d, y));
  }
}
BENCHMARK(BM_FundamentalTensor)->Args({4, 2})->Args({5, 3})->Args({6, 2});

void BM_CartanTensor(benchmark::State& state) {
  auto fam = GeneratingFamily::mroot(2);
  auto d = DatumDecomposition::standard(5, 3);
  Eigen::VectorXd y = interior(5, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cartan_tensor(fam, d, y));
  }
}
BENCHMARK(BM_CartanTensor);

void BM_SCurvatureClosed(benchmark::State& state) {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Eigen::VectorXd y = hd.datum().from_frame(interior(6, 2, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_curvature_closed(hd, y));
  }
}
BENCHMARK(BM_SCurvatureClosed);

void BM_SCurvatureOracle(benchmark::State& state) {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Eigen::VectorXd y = hd.datum().from_frame(interior(6, 2, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_curvature_oracle(hd, y));
  }
}
BENCHMARK(BM_SCurvatureOracle);

void BM_CountNonorthogonal(benchmark::State& state) {
  auto rs = RootSystem::parse("E8");
  Rng rng(4);
  QVec u(8), x(8);
  for (int i = 0; i < 8; ++i) {
    u[i] = QF((long long)rng.below(19) - 9);
    x[i] = QF((long long)rng.below(19) - 9);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_nonorthogonal(rs, u, x));
  }
}
BENCHMARK(BM_CountNonorthogonal);

void BM_RandomScanB2(benchmark::State& state) {
  auto rs = RootSystem::parse("B2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(assertion_scan_random(rs, 1000, 1));
  }
}
BENCHMARK(BM_RandomScanB2);

void BM_OrbitSample(benchmark::State& state) {
  auto g = su3();
  Rng rng(5);
  Eigen::VectorXd x = rng.unit_vector(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_orbit_sample(*g, x, 5, rng));
  }
}
BENCHMARK(BM_OrbitSample);

}  // namespace

BENCHMARK_MAIN();
