#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mbsim {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Density matrices are plain complex matrices; check_density_matrix() in
// channel.hpp validates the invariants where a state is produced for a caller.
using DensityMatrix = Mat;

}  // namespace mbsim
