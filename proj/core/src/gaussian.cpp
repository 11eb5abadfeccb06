#include "vuix/gaussian.hpp"

#include <cmath>
#include <cstdlib>

#include "vuix/errors.hpp"

namespace vuix {

Eigen::MatrixXd toeplitz_covariance(int n, double rho) {
  if (n <= 0) raise(ErrorCode::DimensionMismatch, "covariance dimension must be positive");
  if (!(rho >= 0.0 && rho < 1.0))
    raise(ErrorCode::RhoOutOfRange, "rho must lie in [0, 1), got " + std::to_string(rho));
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(i, j) = std::pow(rho, std::abs(i - j));
  return S;
}

double noise_variance_for_snr(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Sigma_xx, double snr_db) {
  if (H.cols() != Sigma_xx.rows() || Sigma_xx.rows() != Sigma_xx.cols())
    raise(ErrorCode::DimensionMismatch, "state covariance does not match the measurement matrix");
  const double signal_power = (H * Sigma_xx * H.transpose()).trace();
  if (!(signal_power > 0.0))
    raise(ErrorCode::ZeroSignalPower, "measurement matrix carries no signal power");
  return signal_power / (static_cast<double>(H.rows()) * std::pow(10.0, snr_db / 10.0));
}

GaussianEnsemble build_ensemble(const Eigen::MatrixXd& H, const SignalConfig& config) {
  GaussianEnsemble ens;
  ens.rho = config.rho;
  ens.snr_db = config.snr_db;
  ens.Sigma_xx = toeplitz_covariance(static_cast<int>(H.cols()), config.rho);
  ens.sigma2 = noise_variance_for_snr(H, ens.Sigma_xx, config.snr_db);
  ens.Sigma_ss = H * ens.Sigma_xx * H.transpose();
  ens.Sigma_yy = ens.Sigma_ss;
  ens.Sigma_yy.diagonal().array() += ens.sigma2;
  return ens;
}

}  // namespace vuix
