#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace hg {

using SpMat = Eigen::SparseMatrix<double>;

struct EigenResult {
    std::vector<double> values;  // ascending
    Eigen::MatrixXd vectors;     // columns, unit Euclidean norm
    int iterations = 0;
};

// k smallest eigenpairs of a symmetric positive semidefinite matrix by block inverse
// iteration on an LDLT factorization with Rayleigh-Ritz, until |dlambda|/lambda <= tol.
// Deterministic for a fixed seed. Throws SingularOperator or NonConvergence.
EigenResult smallest_eigenpairs(const SpMat& A, int k, double tol, unsigned long long seed, int max_iter = 1000);

// Largest eigenvalue of a symmetric matrix by power iteration with Rayleigh quotient.
double largest_eigenvalue(const SpMat& A, double tol, unsigned long long seed, int max_iter = 5000);

}  // namespace hg
