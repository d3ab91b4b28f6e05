#pragma once

#include <complex>

#include <Eigen/Dense>

namespace igk {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace igk
