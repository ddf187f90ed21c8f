#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "dvpr/clustering.hpp"
#include "dvpr/datagen.hpp"
#include "dvpr/descriptor.hpp"
#include "dvpr/evaluation.hpp"
#include "dvpr/routing.hpp"
#include "dvpr/simulation.hpp"

namespace {

std::vector<dvpr::Descriptor> make_points(std::size_t count, std::size_t dim,
                                          std::uint64_t seed) {
  const dvpr::MixtureSpec spec = dvpr::make_random_mixture(dim, 4, 1.0, 2.0, 11);
  return dvpr::sample_mixture(spec, count, seed);
}

void BM_L2Distance128(benchmark::State& state) {
  const auto points = make_points(2, 128, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvpr::l2_distance(points[0], points[1]));
  }
}
BENCHMARK(BM_L2Distance128);

void BM_NearestNeighbor(benchmark::State& state) {
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  const auto points = make_points(count + 1, 128, 2);
  dvpr::DescriptorStore store;
  for (std::size_t i = 0; i < count; ++i) {
    store.insert({0, static_cast<std::int64_t>(i), static_cast<std::int64_t>(i)},
                 points[i]);
  }
  const dvpr::Descriptor& query = points[count];
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvpr::nearest_neighbor(query, store));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(count));
}
BENCHMARK(BM_NearestNeighbor)->Arg(100)->Arg(1000)->Arg(10000);

void BM_TrainKMeans(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  const auto points = make_points(2000, 32, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvpr::train_kmeans(points, k, 5));
  }
}
BENCHMARK(BM_TrainKMeans)->Arg(4)->Arg(16);

void BM_RunSimulation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dvpr::MixtureSpec spec = dvpr::make_random_mixture(32, 4, 1.0, 2.0, 11);
  const dvpr::SyntheticTrajectory synth =
      dvpr::make_loop_trajectory(spec, 500, 2, 0.3, 7);
  const auto frames = dvpr::split_trajectory(synth.trajectory.descriptors.size(), n);
  const auto training = make_points(1000, 32, 4);
  const dvpr::ClusterModel model =
      dvpr::train_kmeans(training, static_cast<std::size_t>(n), 5);
  const dvpr::OwnershipMap ownership =
      dvpr::OwnershipMap::modular(model.k(), n);
  const dvpr::SimulationInput input{synth.trajectory.descriptors, frames,
                                    synth.trajectory.positions};
  dvpr::SwarmConfig cfg;
  cfg.n = n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dvpr::run_simulation(input, model, ownership, cfg, 10.0));
  }
}
BENCHMARK(BM_RunSimulation)->Arg(1)->Arg(10);

void BM_PRCurve(benchmark::State& state) {
  const int n = 10;
  const dvpr::MixtureSpec spec = dvpr::make_random_mixture(16, 4, 1.0, 2.0, 11);
  const dvpr::SyntheticTrajectory synth =
      dvpr::make_loop_trajectory(spec, 1000, 2, 0.3, 7);
  const auto frames = dvpr::split_trajectory(synth.trajectory.descriptors.size(), n);
  const auto training = make_points(1000, 16, 4);
  const dvpr::ClusterModel model = dvpr::train_kmeans(training, n, 5);
  const dvpr::OwnershipMap ownership = dvpr::OwnershipMap::modular(model.k(), n);
  const dvpr::SimulationInput input{synth.trajectory.descriptors, frames,
                                    synth.trajectory.positions};
  dvpr::SwarmConfig cfg;
  cfg.n = n;
  const dvpr::SimulationResult result =
      dvpr::run_simulation(input, model, ownership, cfg, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvpr::pr_curve(result.records));
  }
}
BENCHMARK(BM_PRCurve);

}  // namespace

BENCHMARK_MAIN();
