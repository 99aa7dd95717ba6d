#pragma once

#include <Eigen/Dense>

namespace fbcs {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

} // namespace fbcs
