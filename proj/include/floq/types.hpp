#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace floq {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx>;

// Fourier multi-index, one entry per drive mode.
using Key = std::vector<int>;

// Bad input: wrong arity, invalid label, malformed configuration.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The numerics ran but the physics contract does not hold
// (degeneracy mismatch, resonant denominator, leaking truncation).
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace floq
