#include "vrspam/vrspam.hpp"

#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace vrspam;

Dataset synthetic(std::uint64_t seed, std::size_t n, std::int32_t d) {
  Rng rng(seed);
  Dataset data;
  data.dimension = d;
  for (std::size_t i = 0; i < n; ++i) {
    Sample s;
    s.label = i % 2 == 0 ? 1 : -1;
    for (std::int32_t j = 1; j <= d; ++j) {
      double v = rng.normal();
      if (j == 1) v += s.label;
      s.features.push_back({j, v});
    }
    data.samples.push_back(std::move(s));
  }
  return normalize(data);
}

Vector bench_weights(std::uint64_t seed, Eigen::Index d) {
  Rng rng(seed);
  Vector w(d);
  for (Eigen::Index i = 0; i < d; ++i) w[i] = 0.1 * rng.normal();
  return w;
}

void BM_ParseLibsvm(benchmark::State& state) {
  const Dataset data = synthetic(1, 512, 32);
  std::ostringstream ss;
  write_libsvm(data, ss);
  const std::string text = ss.str();
  for (auto _ : state) {
    Dataset parsed = binarize_labels(parse_libsvm(text));
    benchmark::DoNotOptimize(parsed);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseLibsvm);

void BM_StochasticGradient(benchmark::State& state) {
  const Dataset data = synthetic(2, 512, 32);
  const DatasetStats stats = compute_stats(data);
  const Vector w = bench_weights(3, 32);
  std::size_t i = 0;
  for (auto _ : state) {
    const Sample& z = data.samples[i++ % data.size()];
    benchmark::DoNotOptimize(stochastic_gradient(w, z, stats));
  }
}
BENCHMARK(BM_StochasticGradient);

void BM_FullGradient(benchmark::State& state) {
  const Dataset data = synthetic(4, 512, 32);
  const DatasetStats stats = compute_stats(data);
  const Vector w = bench_weights(5, 32);
  for (auto _ : state) benchmark::DoNotOptimize(full_gradient(w, data, stats));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * data.size()));
}
BENCHMARK(BM_FullGradient);

void BM_ObjectiveClosedForm(benchmark::State& state) {
  const Dataset data = synthetic(6, 512, 32);
  const DatasetStats stats = compute_stats(data);
  const Vector w = bench_weights(7, 32);
  for (auto _ : state) benchmark::DoNotOptimize(objective_value(w, data, stats));
}
BENCHMARK(BM_ObjectiveClosedForm);

void BM_ProxL2(benchmark::State& state) {
  const Vector v = bench_weights(8, 1024);
  const RegularizerSpec spec{RegKind::L2, 1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(prox(v, 0.01, spec));
}
BENCHMARK(BM_ProxL2);

void BM_ProxElasticNet(benchmark::State& state) {
  const Vector v = bench_weights(9, 1024);
  const RegularizerSpec spec{RegKind::ElasticNet, 1.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(prox(v, 0.01, spec));
}
BENCHMARK(BM_ProxElasticNet);

void BM_AucScore(benchmark::State& state) {
  Rng rng(10);
  const std::size_t n = 4096;
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = rng.normal();
    labels[i] = i % 2 == 0 ? 1 : -1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(auc_score(scores, labels));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_AucScore);

void BM_UpdateVariance(benchmark::State& state) {
  const Dataset data = synthetic(11, 512, 32);
  const DatasetStats stats = compute_stats(data);
  const Vector w = bench_weights(12, 32);
  const Vector snapshot = bench_weights(13, 32);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        update_variance(w, &snapshot, data, stats, UpdateMode::Vrspam));
}
BENCHMARK(BM_UpdateVariance);

void BM_VrspamStage(benchmark::State& state) {
  const Dataset data = synthetic(14, 512, 32);
  const DatasetStats stats = compute_stats(data);
  const RegularizerSpec reg{RegKind::L2, 1.0, 0.0};
  SolverConfig cfg;
  cfg.epochs = 1;
  cfg.seed = 15;
  cfg.record_diagnostics = false;
  for (auto _ : state) {
    SolveResult result = vrspam_solve(data, stats, reg, cfg);
    benchmark::DoNotOptimize(result.weights);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 3 * data.size()));
}
BENCHMARK(BM_VrspamStage);

}  // namespace

BENCHMARK_MAIN();
