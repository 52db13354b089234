#include "gwv/qcore.hpp"

#include <cmath>

namespace gwv {

double spectral_power_trace(const Matrix& rho, double p) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("spectral_power_trace: matrix not square");
  if (!(p > 0.0)) throw std::invalid_argument("spectral_power_trace: exponent must be > 0");
  if (!is_hermitian(rho, 1e-10)) throw numeric_error("spectral_power_trace: matrix not Hermitian within 1e-10");

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("spectral_power_trace: eigensolver failed");

  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < -1e-10) throw numeric_error("spectral_power_trace: matrix not PSD within 1e-10");
    if (lam < 0.0) lam = 0.0;
    if (lam > 0.0) acc += std::pow(lam, p);
  }
  return acc;
}

}  // namespace gwv
