#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "vuix/gaussian.hpp"

namespace vuix {

// Diagonal attack covariance with sparse support: sensor i carries additive
// Gaussian noise of variance variances[i], every other sensor is untouched.
class AttackState {
 public:
  explicit AttackState(int sensor_count);

  // Marks sensor i as attacked with variance v > 0. A sensor can be attacked
  // at most once.
  void add(int i, double v);

  int sensor_count() const noexcept { return sensor_count_; }
  int support_size() const noexcept { return static_cast<int>(variances_.size()); }
  bool is_attacked(int i) const;
  double variance_at(int i) const;  // 0 for uncompromised sensors
  const std::map<int, double>& variances() const noexcept { return variances_; }

  std::vector<int> uncompromised() const;       // ascending sensor indices
  Eigen::MatrixXd covariance() const;           // dense diagonal matrix
  Eigen::VectorXd variance_vector() const;      // length sensor_count

 private:
  int sensor_count_;
  std::map<int, double> variances_;
};

// General (dense) attack covariance. Validated to be symmetric positive
// semidefinite on construction.
struct AttackDistribution {
  Eigen::MatrixXd sigma_aa;

  explicit AttackDistribution(Eigen::MatrixXd sigma);
};

// Information the compromised measurements y + a retain about the state, in
// nats: 1/2 ln|Sigma_ss (Sigma_aa + sigma2 I)^{-1} + I|.
double mutual_information(const GaussianEnsemble& ens, const AttackDistribution& attack);

// Divergence of the compromised measurement distribution from the nominal
// one, in nats: 1/2 (tr(Sigma_yy^{-1} Sigma_aa) - ln|I + Sigma_yy^{-1} Sigma_aa|).
// This is the attacker's asymptotic detectability exponent.
double kl_divergence(const GaussianEnsemble& ens, const AttackDistribution& attack);

// Disruption/detection tradeoff cost: mutual information plus lambda times
// the divergence, evaluated at covariance Sigma + v e_i e_i^T where Sigma is
// the diagonal covariance of `attack`.
double cost_f(const AttackState& attack, double lambda, double v, int i, const GaussianEnsemble& ens);

// Vulnerability of sensor i: the change in cost_f from additionally placing
// variance v on sensor i. More negative means more vulnerable.
double delta_vulnerability(const AttackState& attack, double lambda, double v, int i,
                           const GaussianEnsemble& ens);

// Uncompromised sensor with the smallest vulnerability increment; ties break
// toward the smallest index.
int most_vulnerable(const AttackState& attack, double lambda, double v, const GaussianEnsemble& ens);

// Closed forms for the no-existing-attack case: the most vulnerable sensor is
// the argmin of diag(Sigma_yy^{-1}), independent of lambda and v.
int most_vulnerable_k0(const GaussianEnsemble& ens);
std::vector<int> vulnerability_ranking_k0(const GaussianEnsemble& ens);

// Minimizer of the cost over all Gaussian attack covariances, valid for
// 0 < lambda <= 1: Sigma_aa = lambda^{-1/2} Sigma_ss.
AttackDistribution optimal_unconstrained_attack(const GaussianEnsemble& ens, double lambda);

struct SingleSensorAttack {
  int sensor = -1;
  double variance = 0.0;
};

// Best rank-one diagonal attack: targets the most vulnerable sensor and uses
// the closed-form variance minimizing the cost along that direction.
SingleSensorAttack optimal_single_sensor_attack(const GaussianEnsemble& ens, double lambda);

// Cached quantities for evaluating delta_vulnerability across all sensors of
// one attack state: O(m^3) to build, O(1) per sensor afterwards, using the
// rank-one determinant identity ln|M + v e_i e_i^T| = ln|M| + ln(1 + v (M^{-1})_ii).
class VulnerabilitySweep {
 public:
  VulnerabilitySweep(const GaussianEnsemble& ens, const AttackState& attack);

  double delta(double lambda, double v, int i) const;
  int most_vulnerable(double lambda, double v) const;
  // Uncompromised sensors sorted by ascending delta, ties by index.
  std::vector<int> ranking(double lambda, double v) const;

  const std::vector<int>& uncompromised() const noexcept { return free_; }

 private:
  // Deltas are evaluated in extended precision: with no existing attack the
  // theory makes delta a strictly increasing function of w_i, and sensors tied
  // up to the last bit of w_i must sort identically whether compared by w_i or
  // by delta. Extended precision keeps one-ulp gaps in w_i from collapsing or
  // inverting on the way through the formula.
  long double delta_raw(double lambda, double v, int i) const;

  Eigen::VectorXd g_;           // diag((Sigma_yy + Sigma)^{-1})
  Eigen::VectorXd w_;           // diag(Sigma_yy^{-1})
  Eigen::VectorXd noise_diag_;  // diag(Sigma + sigma2 I)
  std::vector<char> attacked_;
  std::vector<int> free_;
};

}  // namespace vuix
