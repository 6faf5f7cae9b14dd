#pragma once

#include <complex>

#include <Eigen/Dense>

namespace modeshape {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

}  // namespace modeshape
