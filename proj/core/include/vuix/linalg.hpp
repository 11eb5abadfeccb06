#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "vuix/errors.hpp"

namespace vuix {

// Cholesky factorization of a symmetric positive-definite matrix. Only the
// lower triangle of A is read. Fails loudly instead of regularizing: callers
// are expected to hand in covariances that are positive definite by
// construction, so an indefinite input is a bug worth surfacing.
inline Eigen::LLT<Eigen::MatrixXd> spd_factorize(const Eigen::MatrixXd& A, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    raise(ErrorCode::NotPositiveDefinite, std::string(what) + " is not positive definite");
  return llt;
}

inline double spd_logdet(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  const auto& L = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) acc += std::log(L(i, i));
  return 2.0 * acc;
}

inline double spd_logdet(const Eigen::MatrixXd& A, const char* what) {
  return spd_logdet(spd_factorize(A, what));
}

inline Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A, const char* what) {
  return spd_factorize(A, what).solve(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
}

}  // namespace vuix
