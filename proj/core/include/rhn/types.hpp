#pragma once

#include <Eigen/Core>

namespace rhn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace rhn
