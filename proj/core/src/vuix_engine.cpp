#include "vuix/vuix_engine.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "vuix/errors.hpp"

namespace vuix {

VuIxTrial vuix_ranking(const AttackState& attack, double lambda, double v, const GaussianEnsemble& ens) {
  VuIxTrial trial;
  trial.attacked_set.reserve(static_cast<std::size_t>(attack.support_size()));
  for (const auto& [i, var] : attack.variances()) trial.attacked_set.push_back(i);
  trial.ranking = VulnerabilitySweep(ens, attack).ranking(lambda, v);
  for (std::size_t j = 0; j < trial.ranking.size(); ++j)
    trial.vuix.emplace(trial.ranking[j], static_cast<int>(j) + 1);
  return trial;
}

std::vector<int> sample_attack_set(int m, int k, SplitMix64& rng) {
  if (k < 0 || k > m)
    raise(ErrorCode::KTooLarge,
          "cannot attack " + std::to_string(k) + " of " + std::to_string(m) + " sensors");
  std::set<int> chosen;
  for (int j = m - k; j < m; ++j) {
    const int t = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<VuIxTrial> run_trials(const DcModel& model, const GaussianEnsemble& ens,
                                  const MonteCarloConfig& config) {
  const int m = ens.measurement_count();
  if (model.measurement_count() != m)
    raise(ErrorCode::DimensionMismatch, "model and ensemble disagree on the measurement count");
  if (config.trials < 1)
    raise(ErrorCode::InvalidConfig, "trial count must be at least 1, got " + std::to_string(config.trials));
  if (config.k < 0 || config.k > m)
    raise(ErrorCode::KTooLarge,
          "cannot attack " + std::to_string(config.k) + " of " + std::to_string(m) + " sensors");
  if (!(config.attacked_variance > 0.0) && config.k > 0)
    raise(ErrorCode::InvalidConfig, "attacked-sensor variance must be strictly positive");

  std::vector<VuIxTrial> trials(static_cast<std::size_t>(config.trials));

  const auto worker_count = [&] {
    unsigned hw = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::int64_t>(hw) < config.trials ? static_cast<std::int64_t>(hw) : config.trials;
  }();

  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto run_range = [&](std::int64_t begin, std::int64_t stride) {
    try {
      for (std::int64_t t = begin; t < config.trials; t += stride) {
        SplitMix64 rng(SplitMix64::derive_stream(config.seed, static_cast<std::uint64_t>(t)));
        AttackState attack(m);
        for (const int i : sample_attack_set(m, config.k, rng)) attack.add(i, config.attacked_variance);
        trials[static_cast<std::size_t>(t)] = vuix_ranking(attack, config.lambda, config.v, ens);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (worker_count <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (std::int64_t w = 0; w < worker_count; ++w) pool.emplace_back(run_range, w, worker_count);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return trials;
}

std::vector<PositionEvents> event_probabilities(const std::vector<VuIxTrial>& trials, const DcModel& model) {
  if (trials.empty()) raise(ErrorCode::InconsistentTrials, "no trials to aggregate");
  const std::size_t positions = trials.front().ranking.size();
  for (const auto& trial : trials)
    if (trial.ranking.size() != positions || trial.attacked_set.size() != trials.front().attacked_set.size())
      raise(ErrorCode::InconsistentTrials, "trials disagree on the number of ranked sensors");

  std::vector<std::int64_t> injection_hits(positions, 0);
  for (const auto& trial : trials)
    for (std::size_t j = 0; j < positions; ++j)
      if (model.measurements[static_cast<std::size_t>(trial.ranking[j])].kind == MeasurementKind::Injection)
        ++injection_hits[j];

  std::vector<PositionEvents> events(positions);
  const double total = static_cast<double>(trials.size());
  for (std::size_t j = 0; j < positions; ++j) {
    events[j].p_injection = static_cast<double>(injection_hits[j]) / total;
    events[j].p_flow = 1.0 - events[j].p_injection;
  }
  return events;
}

VuIxReport aggregate_trials(const std::vector<VuIxTrial>& trials, const DcModel& model,
                            const GaussianEnsemble& ens, const MonteCarloConfig& config) {
  const int m = ens.measurement_count();
  VuIxReport report;
  report.config = config;
  report.rho = ens.rho;
  report.snr_db = ens.snr_db;
  report.sigma2 = ens.sigma2;
  report.positions = event_probabilities(trials, model);

  // Positions are small integers, so summing them and their squares exactly
  // makes the aggregate independent of trial order.
  std::vector<std::int64_t> count(static_cast<std::size_t>(m), 0);
  std::vector<std::int64_t> sum(static_cast<std::size_t>(m), 0);
  std::vector<std::int64_t> sum_sq(static_cast<std::size_t>(m), 0);
  for (const auto& trial : trials) {
    for (std::size_t j = 0; j < trial.ranking.size(); ++j) {
      const auto s = static_cast<std::size_t>(trial.ranking[j]);
      const std::int64_t pos = static_cast<std::int64_t>(j) + 1;
      ++count[s];
      sum[s] += pos;
      sum_sq[s] += pos * pos;
    }
  }

  report.per_sensor.resize(static_cast<std::size_t>(m));
  for (std::size_t s = 0; s < report.per_sensor.size(); ++s) {
    auto& stats = report.per_sensor[s];
    stats.n_observed = count[s];
    if (count[s] == 0) continue;  // sensor was attacked in every trial
    const double n = static_cast<double>(count[s]);
    stats.mean_vuix = static_cast<double>(sum[s]) / n;
    stats.var_vuix = (static_cast<double>(sum_sq[s]) - static_cast<double>(sum[s]) * static_cast<double>(sum[s]) / n) / n;
  }
  return report;
}

VuIxReport monte_carlo_vuix(const DcModel& model, const GaussianEnsemble& ens,
                            const MonteCarloConfig& config) {
  return aggregate_trials(run_trials(model, ens, config), model, ens, config);
}

}  // namespace vuix
