#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "vuix/dc_model.hpp"
#include "vuix/gaussian.hpp"
#include "vuix/info_metrics.hpp"
#include "vuix/rng.hpp"

namespace vuix {

// Outcome of ranking the uncompromised sensors of one attack configuration.
// The vulnerability index of a sensor is its 1-based position in `ranking`;
// position 1 is the most vulnerable (smallest delta).
struct VuIxTrial {
  std::vector<int> attacked_set;  // ascending sensor indices
  std::vector<int> ranking;       // uncompromised sensors, ascending delta
  std::map<int, int> vuix;        // sensor -> 1-based position in ranking
};

VuIxTrial vuix_ranking(const AttackState& attack, double lambda, double v, const GaussianEnsemble& ens);

// Uniform random k-subset of {0..m-1} via Floyd's algorithm: every subset has
// probability 1/C(m,k). Returned sorted ascending.
std::vector<int> sample_attack_set(int m, int k, SplitMix64& rng);

struct SensorStats {
  double mean_vuix = 0.0;
  double var_vuix = 0.0;  // population variance over observed trials
  std::int64_t n_observed = 0;
};

struct PositionEvents {
  double p_injection = 0.0;
  double p_flow = 0.0;
};

struct MonteCarloConfig {
  int k = 2;                       // attacked sensors per trial
  double lambda = 2.0;             // detection weight in the cost
  double v = 1.0;                  // probe variance in the delta sweep
  double attacked_variance = 1.0;  // variance placed on each attacked sensor
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = one per hardware thread; result is thread-count independent
};

struct VuIxReport {
  MonteCarloConfig config;
  double rho = 0.0;
  double snr_db = 0.0;
  double sigma2 = 0.0;
  std::vector<SensorStats> per_sensor;    // indexed by sensor
  std::vector<PositionEvents> positions;  // index j describes position j+1
};

// Fraction of trials whose position-j sensor is an injection / flow
// measurement. All trials must rank the same number of sensors.
std::vector<PositionEvents> event_probabilities(const std::vector<VuIxTrial>& trials, const DcModel& model);

// The three stages of the experiment, exposed separately so aggregation can
// be exercised on its own. Trials are independent and run in parallel; each
// trial draws from its own RNG stream derived from (seed, trial index), and
// aggregation uses integer accumulators, so reports are bit-identical for
// any thread count and any trial ordering.
std::vector<VuIxTrial> run_trials(const DcModel& model, const GaussianEnsemble& ens,
                                  const MonteCarloConfig& config);
VuIxReport aggregate_trials(const std::vector<VuIxTrial>& trials, const DcModel& model,
                            const GaussianEnsemble& ens, const MonteCarloConfig& config);
VuIxReport monte_carlo_vuix(const DcModel& model, const GaussianEnsemble& ens,
                            const MonteCarloConfig& config);

}  // namespace vuix
