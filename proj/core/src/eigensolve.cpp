#include "hitchin_glue/eigensolve.hpp"

#include "hitchin_glue/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>

namespace hg {

namespace {

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& W) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
    return qr.householderQ() * Eigen::MatrixXd::Identity(W.rows(), W.cols());
}

Eigen::MatrixXd random_block(Eigen::Index n, int p, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXd V(n, p);
    for (Eigen::Index c = 0; c < p; ++c)
        for (Eigen::Index r = 0; r < n; ++r) V(r, c) = nd(rng);
    return V;
}

}  // namespace

EigenResult smallest_eigenpairs(const SpMat& A, int k, double tol, unsigned long long seed, int max_iter) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || n == 0) throw InvalidArgument("smallest_eigenpairs: need a nonempty square matrix");
    if (k < 1 || k > n) throw InvalidArgument("smallest_eigenpairs: need 1 <= k <= n");
    const int p = int(std::min<Eigen::Index>(n, std::max(2 * k, k + 8)));

    Eigen::SimplicialLDLT<SpMat> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SingularOperator("LDLT factorization failed");
    const double dmax = ldlt.vectorD().cwiseAbs().maxCoeff();
    if (ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-14 * std::max(1.0, dmax))
        throw SingularOperator("LDLT factorization has a vanishing pivot; lambda_1 is below 1e-14");

    Eigen::MatrixXd V = orthonormal_columns(random_block(n, p, seed));
    std::vector<double> prev(std::size_t(k), 0.0);
    EigenResult res;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::MatrixXd W = ldlt.solve(V);
        W = orthonormal_columns(W);
        Eigen::MatrixXd H = W.transpose() * (A * W);
        H = 0.5 * (H + H.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        V = W * es.eigenvectors();
        bool done = it > 1;
        for (int j = 0; j < k; ++j) {
            double lam = es.eigenvalues()(j);
            double scale = std::max(std::abs(lam), 1e-300);
            if (std::abs(lam - prev[std::size_t(j)]) > tol * scale) done = false;
            prev[std::size_t(j)] = lam;
        }
        if (done) {
            res.values = prev;
            res.vectors = V.leftCols(k);
            res.iterations = it;
            return res;
        }
    }
    throw NonConvergence("smallest_eigenpairs: no convergence after " + std::to_string(max_iter) + " iterations");
}

double largest_eigenvalue(const SpMat& A, double tol, unsigned long long seed, int max_iter) {
    Eigen::VectorXd v = random_block(A.rows(), 1, seed).col(0);
    v.normalize();
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = A * v;
        double next = v.dot(w);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        if (it > 0 && std::abs(next - lam) <= tol * std::abs(next)) return next;
        lam = next;
    }
    throw NonConvergence("largest_eigenvalue: no convergence");
}

}  // namespace hg
