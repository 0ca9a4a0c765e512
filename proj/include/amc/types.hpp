#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace amc {

using Complex = std::complex<double>;
using GridFunction = Eigen::VectorXcd;      // complex function sampled on the spatial grid
using CoefficientVector = Eigen::VectorXcd; // amplitudes over the configuration basis
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

constexpr Complex kImag{0.0, 1.0};

/// Thrown when an operation receives arrays of inconsistent dimension.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a documented precondition is violated.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Rank-3 complex tensor with dense row-major storage.
class Tensor3 {
public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2)
      : d0_(d0), d1_(d1), d2_(d2),
        data_(static_cast<size_t>(d0) * d1 * d2, Complex{0.0, 0.0}) {}

  Complex& operator()(int i, int j, int k) {
    return data_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
  }
  Complex operator()(int i, int j, int k) const {
    return data_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
  }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

private:
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<Complex> data_;
};

/// Rank-4 complex tensor with dense row-major storage.
class Tensor4 {
public:
  Tensor4() = default;
  Tensor4(int d0, int d1, int d2, int d3)
      : d0_(d0), d1_(d1), d2_(d2), d3_(d3),
        data_(static_cast<size_t>(d0) * d1 * d2 * d3, Complex{0.0, 0.0}) {}

  Complex& operator()(int i, int j, int k, int l) {
    return data_[((static_cast<size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l];
  }
  Complex operator()(int i, int j, int k, int l) const {
    return data_[((static_cast<size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l];
  }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  int dim3() const { return d3_; }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

private:
  int d0_ = 0, d1_ = 0, d2_ = 0, d3_ = 0;
  std::vector<Complex> data_;
};

}  // namespace amc
