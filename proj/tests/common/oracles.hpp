#pragma once

// Reference implementations used to cross-check the library. Everything here
// deliberately takes a different numerical route than the production code:
// eigendecompositions instead of Cholesky, joint-covariance determinants
// instead of the reduced formulas, nodal susceptance accumulation instead of
// flow-row summation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "vuix/grid_case.hpp"

namespace oracles {

inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
  return solver;
}

inline double logdet(const Eigen::MatrixXd& A) {
  const Eigen::VectorXd ev = eig(A).eigenvalues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) acc += std::log(ev(i));
  return acc;
}

inline Eigen::MatrixXd inverse(const Eigen::MatrixXd& A) {
  const auto solver = eig(A);
  return solver.eigenvectors() * solver.eigenvalues().cwiseInverse().asDiagonal() *
         solver.eigenvectors().transpose();
}

// Mutual information between x ~ N(0, Sxx) and y = H x + n, n ~ N(0, N),
// from the block determinant of the joint covariance:
// I(x; y) = 1/2 ln(|Sxx| |Syy| / |joint|).
inline double mutual_information_joint(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Sxx,
                                       const Eigen::MatrixXd& N) {
  const Eigen::Index n = H.cols();
  const Eigen::Index m = H.rows();
  const Eigen::MatrixXd cross = Sxx * H.transpose();
  const Eigen::MatrixXd Syy = H * cross + N;
  Eigen::MatrixXd joint(n + m, n + m);
  joint.topLeftCorner(n, n) = Sxx;
  joint.topRightCorner(n, m) = cross;
  joint.bottomLeftCorner(m, n) = cross.transpose();
  joint.bottomRightCorner(m, m) = Syy;
  return 0.5 * (logdet(Sxx) + logdet(Syy) - logdet(joint));
}

// KL divergence between zero-mean Gaussians N(0, S0) and N(0, S1).
inline double kl_gaussians(const Eigen::MatrixXd& S0, const Eigen::MatrixXd& S1) {
  const Eigen::Index m = S0.rows();
  const double trace_term = (inverse(S1) * S0).trace();
  return 0.5 * (trace_term - static_cast<double>(m) + logdet(S1) - logdet(S0));
}

// 1-D minimization by golden-section search on [lo, hi].
inline double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Measurement matrix rebuilt by nodal susceptance accumulation: the injection
// block is the weighted graph Laplacian assembled entry by entry, not a sum
// of flow rows.
inline Eigen::MatrixXd rebuild_measurement_matrix(const vuix::GridCase& grid, bool drop_reference_angle,
                                                  bool apply_tap_ratio) {
  const int n = grid.bus_count();
  const int f_count = grid.in_service_branch_count();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n + f_count, n);
  int flow_row = n;
  for (const auto& br : grid.branches()) {
    if (!br.in_service) continue;
    const int f = grid.bus_index(br.from_bus);
    const int t = grid.bus_index(br.to_bus);
    const double tap = (apply_tap_ratio && br.tap_ratio != 0.0) ? br.tap_ratio : 1.0;
    const double b = 1.0 / (br.reactance_x * tap);
    H(f, f) += b;
    H(f, t) -= b;
    H(t, t) += b;
    H(t, f) -= b;
    H(flow_row, f) = b;
    H(flow_row, t) = -b;
    ++flow_row;
  }
  if (!drop_reference_angle) return H;
  Eigen::MatrixXd reduced(H.rows(), n - 1);
  int col = 0;
  for (int c = 0; c < n; ++c) {
    if (c == grid.reference_index()) continue;
    reduced.col(col++) = H.col(c);
  }
  return reduced;
}

}  // namespace oracles
