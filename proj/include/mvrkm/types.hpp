#pragma once

#include <Eigen/Dense>

namespace mvrkm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace mvrkm
