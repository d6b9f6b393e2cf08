#pragma once

#include <Eigen/Dense>

namespace ctlti {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexVector = Eigen::VectorXi;

}  // namespace ctlti
