#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fockalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CSparse = Eigen::SparseMatrix<Complex>;

}  // namespace fockalg
