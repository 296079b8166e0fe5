#pragma once

#include <Eigen/Dense>

namespace oar {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace oar
