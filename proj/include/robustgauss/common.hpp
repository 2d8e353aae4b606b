#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace robustgauss {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Numerical failure (non-convergence, loss of positive definiteness, ...).
/// The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File I/O or parse failure. The CLI maps this to exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace robustgauss
