#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lopat {

using cplx = std::complex<double>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;

// Conserved-variable state. Length equals the owning system's dimension.
using StateVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace lopat
