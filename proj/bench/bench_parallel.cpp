#include <benchmark/benchmark.h>

#include <random>

#include "liftlab/decomposition.hpp"
#include "liftlab/hierarchy.hpp"
#include "liftlab/lasserre_sdp.hpp"
#include "liftlab/projection_model.hpp"
#include "liftlab/sampling.hpp"

using namespace liftlab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel; }

void BM_SaMembership(benchmark::State& state) {
  const Rational eps(1, 10);
  auto inst = uniform_gap_instance(16, eps);
  auto cert = sa_gap_certificate(16, eps, 4);
  MembershipOptions opts{mode(state), false};
  for (auto _ : state) {
    auto r = sa_membership(cert.y, inst, 4, opts);
    benchmark::DoNotOptimize(r.checks);
  }
}
BENCHMARK(BM_SaMembership)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LasserreMembership(benchmark::State& state) {
  std::mt19937_64 rng(5);
  auto inst = random_instance(8, rng);
  auto y = random_mixture(inst, 4, 6, rng).y;
  MembershipOptions opts{mode(state), false};
  for (auto _ : state) {
    auto r = lasserre_membership(y, inst, 2, opts);
    benchmark::DoNotOptimize(r.checks);
  }
}
BENCHMARK(BM_LasserreMembership)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  std::mt19937_64 rng(6);
  auto inst = KnapsackInstance::make({1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 1}, Rational(3, 2));
  auto y = random_mixture(inst, 6, 6, rng).y;
  SubsetKey s = big_items(inst, 2);
  for (auto _ : state) {
    auto res = decompose(y, inst, s, 2, 3, mode(state));
    benchmark::DoNotOptimize(res.parts.size());
  }
}
BENCHMARK(BM_Decompose)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ProjectionSweep(benchmark::State& state) {
  auto inst = uniform_gap_instance(8, Rational(1, 10));
  ProjectionModel model = build_full_model(inst, 3);
  AlternatingProjector projector(model, mode(state));
  std::vector<double> p(model.params, 0.1);
  for (auto _ : state) {
    double r = projector.sweep(p, 1.2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ProjectionSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
