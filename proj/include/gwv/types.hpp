#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwv {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Raised when a computation fails numerically (non-PSD input, non-convergence).
// Distinct from std::invalid_argument / std::domain_error so the CLI can map it
// to its own exit code.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subsystem dimensions of a composite system. Subsystem 0 owns the most
// significant mixed-radix digit of a composite basis index.
class DimList {
 public:
  DimList() = default;
  DimList(std::initializer_list<int> ds) : DimList(std::vector<int>(ds)) {}
  explicit DimList(std::vector<int> ds) : dims_(std::move(ds)) {
    for (int d : dims_) {
      if (d < 2) throw std::invalid_argument("DimList: every dimension must be >= 2");
    }
  }

  int size() const { return static_cast<int>(dims_.size()); }
  int operator[](int i) const { return dims_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& vec() const { return dims_; }

  // product of all dimensions
  long total() const {
    long t = 1;
    for (int d : dims_) t *= d;
    return t;
  }

  bool operator==(const DimList& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
};

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_density_matrix(const Matrix& m, double tol = 1e-10) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace gwv
