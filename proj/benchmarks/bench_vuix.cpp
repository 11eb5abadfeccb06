#include <benchmark/benchmark.h>

#include <string>

#include "vuix/dc_model.hpp"
#include "vuix/gaussian.hpp"
#include "vuix/grid_case.hpp"
#include "vuix/info_metrics.hpp"
#include "vuix/vuix_engine.hpp"

namespace {

std::string data_path(const std::string& name) { return std::string(VUIX_DATA_DIR) + "/" + name; }

const char* case_name(int index) {
  switch (index) {
    case 0: return "case9.m";
    case 1: return "case14.m";
    default: return "case30.m";
  }
}

struct Workbench {
  vuix::DcModel model;
  vuix::GaussianEnsemble ens;
};

Workbench make_workbench(int case_index) {
  Workbench wb;
  wb.model = vuix::build_dc_model(vuix::load_case(data_path(case_name(case_index))));
  wb.ens = vuix::build_ensemble(wb.model.H, {0.1, 30.0});
  return wb;
}

void BM_ParseAndBuildModel(benchmark::State& state) {
  const std::string path = data_path(case_name(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    const vuix::DcModel model = vuix::build_dc_model(vuix::load_case(path));
    benchmark::DoNotOptimize(model.H.sum());
  }
}
BENCHMARK(BM_ParseAndBuildModel)->Arg(0)->Arg(1)->Arg(2);

void BM_BuildEnsemble(benchmark::State& state) {
  const Workbench wb = make_workbench(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const vuix::GaussianEnsemble ens = vuix::build_ensemble(wb.model.H, {0.1, 30.0});
    benchmark::DoNotOptimize(ens.sigma2);
  }
}
BENCHMARK(BM_BuildEnsemble)->Arg(0)->Arg(2);

// Cost of preparing the cached sweep: two Cholesky factorizations plus the
// inverse diagonals.
void BM_SweepConstruction(benchmark::State& state) {
  const Workbench wb = make_workbench(static_cast<int>(state.range(0)));
  vuix::AttackState attack(wb.ens.measurement_count());
  attack.add(0, 1.0);
  attack.add(wb.ens.measurement_count() - 1, 1.0);
  for (auto _ : state) {
    const vuix::VulnerabilitySweep sweep(wb.ens, attack);
    benchmark::DoNotOptimize(sweep.uncompromised().size());
  }
}
BENCHMARK(BM_SweepConstruction)->Arg(0)->Arg(2);

// Per-ranking cost once the sweep is cached; this is the O(m log m) inner
// loop of every Monte-Carlo trial.
void BM_RankingFromSweep(benchmark::State& state) {
  const Workbench wb = make_workbench(static_cast<int>(state.range(0)));
  vuix::AttackState attack(wb.ens.measurement_count());
  attack.add(0, 1.0);
  attack.add(wb.ens.measurement_count() - 1, 1.0);
  const vuix::VulnerabilitySweep sweep(wb.ens, attack);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep.ranking(2.0, 1.0).size());
  }
}
BENCHMARK(BM_RankingFromSweep)->Arg(0)->Arg(2);

void BM_SingleTrial(benchmark::State& state) {
  const Workbench wb = make_workbench(static_cast<int>(state.range(0)));
  vuix::AttackState attack(wb.ens.measurement_count());
  attack.add(1, 1.0);
  attack.add(4, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vuix::vuix_ranking(attack, 2.0, 1.0, wb.ens).ranking.size());
  }
}
BENCHMARK(BM_SingleTrial)->Arg(0)->Arg(2);

void BM_MonteCarlo(benchmark::State& state) {
  const Workbench wb = make_workbench(static_cast<int>(state.range(0)));
  vuix::MonteCarloConfig config;
  config.k = 2;
  config.trials = state.range(1);
  for (auto _ : state) {
    const vuix::VuIxReport report = vuix::monte_carlo_vuix(wb.model, wb.ens, config);
    benchmark::DoNotOptimize(report.per_sensor.front().mean_vuix);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_MonteCarlo)->Args({0, 100})->Args({2, 100})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
