#pragma once

#include <Eigen/Dense>

namespace dec {

// Dense row-major storage; every matrix in this library is at most a few
// hundred entries per side.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace dec
