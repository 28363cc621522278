#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ucr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Sesquilinear pairing <a,b> = sum_i a_i conj(b_i), linear in the first slot.
inline Complex pairing(const Vector& a, const Vector& b) { return b.dot(a); }

}  // namespace ucr
