#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hylab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Raised when an operation is asked for a case it does not cover
/// (for example a closed-form norm of a non-Gaussian function).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a function exceeds its declared Gaussian envelope.
class EnvelopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hylab
