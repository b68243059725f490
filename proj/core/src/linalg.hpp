#pragma once

#include <algorithm>

#include <Eigen/Core>
#include <Eigen/SVD>

namespace nsee::detail {

// Eigen 3.4.0's divide-and-conquer SVD can return NaN or silently wrong
// factors on complex matrices with many exact zeros. Its result is accepted
// only when it reconstructs the input; otherwise Jacobi is used.
struct ThinSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
};

inline bool plausible_svd(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u, const Eigen::VectorXd& s,
                          const Eigen::MatrixXcd& v) {
  if (!s.allFinite() || !u.allFinite() || !v.allFinite()) return false;
  constexpr double kTol = 1e-10;
  const double scale = std::max(m.norm(), 1e-300);
  const Eigen::MatrixXcd rec = u * s.cast<std::complex<double>>().asDiagonal() * v.adjoint();
  if ((rec - m).norm() > kTol * scale) return false;
  const Eigen::Index k = s.size();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(k, k);
  return (u.adjoint() * u - eye).norm() < kTol * double(k + 1) && (v.adjoint() * v - eye).norm() < kTol * double(k + 1);
}

inline ThinSvd thin_svd(const Eigen::MatrixXcd& m) {
  {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (plausible_svd(m, svd.matrixU(), svd.singularValues(), svd.matrixV()))
      return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) { return thin_svd(m).s; }

}  // namespace nsee::detail
