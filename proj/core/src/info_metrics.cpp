#include "vuix/info_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vuix/errors.hpp"
#include "vuix/linalg.hpp"

namespace vuix {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0))
    raise(ErrorCode::LambdaOutOfRange, "lambda must be strictly positive, got " + std::to_string(lambda));
}

void check_probe_variance(double v) {
  if (!(v >= 0.0)) raise(ErrorCode::InvalidConfig, "attack variance must be nonnegative, got " + std::to_string(v));
}

void check_sensor_index(int i, int m) {
  if (i < 0 || i >= m)
    raise(ErrorCode::IndexOutOfRange,
          "sensor index " + std::to_string(i) + " outside [0, " + std::to_string(m) + ")");
}

void check_same_sensors(const AttackState& attack, const GaussianEnsemble& ens) {
  if (attack.sensor_count() != ens.measurement_count())
    raise(ErrorCode::DimensionMismatch, "attack state covers " + std::to_string(attack.sensor_count()) +
                                            " sensors but the ensemble has " +
                                            std::to_string(ens.measurement_count()));
}

Eigen::VectorXd inverse_diagonal(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  const Eigen::Index m = llt.matrixLLT().rows();
  return llt.solve(Eigen::MatrixXd::Identity(m, m)).diagonal();
}

}  // namespace

AttackState::AttackState(int sensor_count) : sensor_count_(sensor_count) {
  if (sensor_count <= 0)
    raise(ErrorCode::InvalidConfig, "sensor count must be positive, got " + std::to_string(sensor_count));
}

void AttackState::add(int i, double v) {
  check_sensor_index(i, sensor_count_);
  if (!(v > 0.0))
    raise(ErrorCode::InvalidConfig, "attack variance must be strictly positive, got " + std::to_string(v));
  if (!variances_.emplace(i, v).second)
    raise(ErrorCode::SensorAlreadyAttacked, "sensor " + std::to_string(i) + " is already attacked");
}

bool AttackState::is_attacked(int i) const {
  check_sensor_index(i, sensor_count_);
  return variances_.count(i) != 0;
}

double AttackState::variance_at(int i) const {
  check_sensor_index(i, sensor_count_);
  const auto it = variances_.find(i);
  return it == variances_.end() ? 0.0 : it->second;
}

std::vector<int> AttackState::uncompromised() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(sensor_count_ - support_size()));
  for (int i = 0; i < sensor_count_; ++i)
    if (!variances_.count(i)) out.push_back(i);
  return out;
}

Eigen::MatrixXd AttackState::covariance() const {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(sensor_count_, sensor_count_);
  for (const auto& [i, v] : variances_) S(i, i) = v;
  return S;
}

Eigen::VectorXd AttackState::variance_vector() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(sensor_count_);
  for (const auto& [i, v] : variances_) d(i) = v;
  return d;
}

AttackDistribution::AttackDistribution(Eigen::MatrixXd sigma) : sigma_aa(std::move(sigma)) {
  if (sigma_aa.rows() != sigma_aa.cols())
    raise(ErrorCode::DimensionMismatch, "attack covariance must be square");
  const double scale = std::max(sigma_aa.trace() / static_cast<double>(sigma_aa.rows()), 1.0);
  if ((sigma_aa - sigma_aa.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    raise(ErrorCode::NotPositiveDefinite, "attack covariance is not symmetric");
  Eigen::MatrixXd shifted = sigma_aa;
  shifted.diagonal().array() += 1e-12 * scale;
  spd_factorize(shifted, "attack covariance (up to a 1e-12 diagonal shift)");
}

double mutual_information(const GaussianEnsemble& ens, const AttackDistribution& attack) {
  const int m = ens.measurement_count();
  if (attack.sigma_aa.rows() != m)
    raise(ErrorCode::DimensionMismatch, "attack covariance dimension does not match the ensemble");
  Eigen::MatrixXd noisy = attack.sigma_aa;
  noisy.diagonal().array() += ens.sigma2;
  const double logdet_noisy = spd_logdet(noisy, "attack-plus-noise covariance");
  const double logdet_total = spd_logdet(ens.Sigma_yy + attack.sigma_aa, "compromised measurement covariance");
  return 0.5 * (logdet_total - logdet_noisy);
}

double kl_divergence(const GaussianEnsemble& ens, const AttackDistribution& attack) {
  const int m = ens.measurement_count();
  if (attack.sigma_aa.rows() != m)
    raise(ErrorCode::DimensionMismatch, "attack covariance dimension does not match the ensemble");
  const auto llt_yy = spd_factorize(ens.Sigma_yy, "measurement covariance");
  const double trace_term = llt_yy.solve(attack.sigma_aa).trace();
  const double logdet_yy = spd_logdet(llt_yy);
  const double logdet_total = spd_logdet(ens.Sigma_yy + attack.sigma_aa, "compromised measurement covariance");
  return 0.5 * (trace_term - (logdet_total - logdet_yy));
}

double cost_f(const AttackState& attack, double lambda, double v, int i, const GaussianEnsemble& ens) {
  check_same_sensors(attack, ens);
  check_lambda(lambda);
  check_probe_variance(v);
  check_sensor_index(i, ens.measurement_count());
  if (v > 0.0 && attack.is_attacked(i))
    raise(ErrorCode::SensorAlreadyAttacked, "sensor " + std::to_string(i) + " is already attacked");

  Eigen::VectorXd d = attack.variance_vector();
  d(i) += v;

  Eigen::MatrixXd total = ens.Sigma_yy;
  total.diagonal() += d;
  const double logdet_total = spd_logdet(total, "compromised measurement covariance");

  double logdet_noisy = 0.0;
  for (Eigen::Index j = 0; j < d.size(); ++j) logdet_noisy += std::log(ens.sigma2 + d(j));

  const auto llt_yy = spd_factorize(ens.Sigma_yy, "measurement covariance");
  const double trace_term = inverse_diagonal(llt_yy).dot(d);
  const double logdet_yy = spd_logdet(llt_yy);

  return 0.5 * (1.0 - lambda) * logdet_total - 0.5 * logdet_noisy + 0.5 * lambda * (trace_term + logdet_yy);
}

double delta_vulnerability(const AttackState& attack, double lambda, double v, int i,
                           const GaussianEnsemble& ens) {
  return VulnerabilitySweep(ens, attack).delta(lambda, v, i);
}

int most_vulnerable(const AttackState& attack, double lambda, double v, const GaussianEnsemble& ens) {
  return VulnerabilitySweep(ens, attack).most_vulnerable(lambda, v);
}

int most_vulnerable_k0(const GaussianEnsemble& ens) {
  const Eigen::VectorXd w = inverse_diagonal(spd_factorize(ens.Sigma_yy, "measurement covariance"));
  int best = 0;
  for (int i = 1; i < w.size(); ++i)
    if (w(i) < w(best)) best = i;
  return best;
}

std::vector<int> vulnerability_ranking_k0(const GaussianEnsemble& ens) {
  const Eigen::VectorXd w = inverse_diagonal(spd_factorize(ens.Sigma_yy, "measurement covariance"));
  std::vector<int> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w(a) < w(b); });
  return order;
}

AttackDistribution optimal_unconstrained_attack(const GaussianEnsemble& ens, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    raise(ErrorCode::LambdaOutOfRange, "the unconstrained attack construction requires 0 < lambda <= 1, got " +
                                           std::to_string(lambda) +
                                           "; use the single-sensor construction for larger lambda");
  return AttackDistribution(ens.Sigma_ss / std::sqrt(lambda));
}

SingleSensorAttack optimal_single_sensor_attack(const GaussianEnsemble& ens, double lambda) {
  check_lambda(lambda);
  const Eigen::VectorXd w = inverse_diagonal(spd_factorize(ens.Sigma_yy, "measurement covariance"));
  SingleSensorAttack out;
  out.sensor = most_vulnerable_k0(ens);
  const double wi = w(out.sensor);
  const double s2 = ens.sigma2;
  const double radicand = s2 * s2 - 4.0 * (wi * s2 - 1.0) / (lambda * wi * wi);
  // w_i sigma2 <= 1 keeps the radicand >= sigma^4, so the root is real and the
  // stationary point nonnegative; the clamp only absorbs roundoff.
  out.variance = std::max(-0.5 * s2 + 0.5 * std::sqrt(radicand), 0.0);
  return out;
}

VulnerabilitySweep::VulnerabilitySweep(const GaussianEnsemble& ens, const AttackState& attack) {
  check_same_sensors(attack, ens);
  const int m = ens.measurement_count();
  const Eigen::VectorXd d = attack.variance_vector();

  w_ = inverse_diagonal(spd_factorize(ens.Sigma_yy, "measurement covariance"));
  if (attack.support_size() == 0) {
    g_ = w_;  // same matrix, skip the second factorization
  } else {
    Eigen::MatrixXd total = ens.Sigma_yy;
    total.diagonal() += d;
    g_ = inverse_diagonal(spd_factorize(total, "compromised measurement covariance"));
  }
  noise_diag_ = d.array() + ens.sigma2;

  attacked_.assign(static_cast<std::size_t>(m), 0);
  for (const auto& [i, v] : attack.variances()) attacked_[static_cast<std::size_t>(i)] = 1;
  free_ = attack.uncompromised();
}

long double VulnerabilitySweep::delta_raw(double lambda, double v, int i) const {
  check_lambda(lambda);
  check_probe_variance(v);
  check_sensor_index(i, static_cast<int>(w_.size()));
  if (v > 0.0 && attacked_[static_cast<std::size_t>(i)])
    raise(ErrorCode::SensorAlreadyAttacked, "sensor " + std::to_string(i) + " is already attacked");
  const long double lam = lambda;
  const long double vv = v;
  return 0.5L * (1.0L - lam) * std::log1p(vv * static_cast<long double>(g_(i))) -
         0.5L * std::log1p(vv / static_cast<long double>(noise_diag_(i))) +
         0.5L * lam * vv * static_cast<long double>(w_(i));
}

double VulnerabilitySweep::delta(double lambda, double v, int i) const {
  return static_cast<double>(delta_raw(lambda, v, i));
}

int VulnerabilitySweep::most_vulnerable(double lambda, double v) const {
  if (free_.empty()) raise(ErrorCode::AllSensorsAttacked, "every sensor is already attacked");
  int best = free_.front();
  long double best_delta = delta_raw(lambda, v, best);
  for (std::size_t j = 1; j < free_.size(); ++j) {
    const long double dj = delta_raw(lambda, v, free_[j]);
    if (dj < best_delta) {
      best = free_[j];
      best_delta = dj;
    }
  }
  return best;
}

std::vector<int> VulnerabilitySweep::ranking(double lambda, double v) const {
  if (free_.empty()) raise(ErrorCode::AllSensorsAttacked, "every sensor is already attacked");
  std::vector<long double> deltas(static_cast<std::size_t>(w_.size()), 0.0L);
  for (const int i : free_) deltas[static_cast<std::size_t>(i)] = delta_raw(lambda, v, i);
  std::vector<int> order = free_;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return deltas[static_cast<std::size_t>(a)] < deltas[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace vuix
