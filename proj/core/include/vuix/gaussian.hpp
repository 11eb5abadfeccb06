#pragma once

#include <Eigen/Dense>

namespace vuix {

struct SignalConfig {
  double rho = 0.1;      // lag-1 correlation of the state process, in [0, 1)
  double snr_db = 30.0;  // per-measurement signal-to-noise ratio in decibels
};

// Covariance with entries rho^|i-j| (unit variance on the diagonal).
Eigen::MatrixXd toeplitz_covariance(int n, double rho);

// Sensor noise variance that realizes the requested SNR, defined as
// 10*log10(trace(H Sigma_xx H^T) / (m * sigma2)).
double noise_variance_for_snr(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Sigma_xx, double snr_db);

// Jointly Gaussian measurement ensemble y = H x + e with x ~ N(0, Sigma_xx)
// and i.i.d. sensor noise e ~ N(0, sigma2 I).
struct GaussianEnsemble {
  Eigen::MatrixXd Sigma_xx;
  Eigen::MatrixXd Sigma_ss;  // noise-free signal covariance H Sigma_xx H^T
  Eigen::MatrixXd Sigma_yy;  // Sigma_ss + sigma2 I
  double sigma2 = 0.0;
  double rho = 0.0;
  double snr_db = 0.0;

  int state_count() const noexcept { return static_cast<int>(Sigma_xx.rows()); }
  int measurement_count() const noexcept { return static_cast<int>(Sigma_yy.rows()); }
};

GaussianEnsemble build_ensemble(const Eigen::MatrixXd& H, const SignalConfig& config = {});

}  // namespace vuix
