#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace hg {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Trace-free 2x2 complex matrix. Construction rejects trace above 1e-12.
class MatSL2 {
public:
    MatSL2() : m_(Mat2::Zero()) {}
    explicit MatSL2(const Mat2& m);
    MatSL2(cd a, cd b, cd c, cd d);
    const Mat2& mat() const { return m_; }
    cd operator()(int i, int j) const { return m_(i, j); }

private:
    Mat2 m_;
};

// Hermitian trace-free 2x2 matrix (an element of i su(2)).
class MatISU2 {
public:
    MatISU2() : m_(Mat2::Zero()) {}
    explicit MatISU2(const Mat2& m);
    static MatISU2 from_coords(const Vec3& c);
    const Mat2& mat() const { return m_; }
    Vec3 coords() const;
    MatSL2 sl2() const { return MatSL2(m_); }

private:
    Mat2 m_;
};

// Ordered basis {diag(1,-1), [[0,1],[1,0]], [[0,-i],[i,0]]} of i su(2).
const std::array<Mat2, 3>& isu2_basis();

// Real coordinates of the hermitian part of m in the basis (tr(sigma_a sigma_b) = 2 delta_ab).
Vec3 isu2_coords(const Mat2& m);
Mat2 from_isu2_coords(const Vec3& c);

// Real inner product Re tr(a b^*).
double inner(const Mat2& a, const Mat2& b);
double frob2(const Mat2& a);

Mat2 adj(const Mat2& a);
Mat2 comm(const Mat2& a, const Mat2& b);
Mat2 traceless(const Mat2& a);

MatSL2 commutator(const MatSL2& x, const MatSL2& y);

// M_phi gamma = [phi^*,[phi,gamma]] + [phi,[phi^*,gamma]].
MatISU2 m_phi_apply(const MatSL2& phi, const MatISU2& gamma);
Mat2 m_phi_apply(const Mat2& phi, const Mat2& gamma);

// 3x3 real matrix of M_phi in the i su(2) basis.
Mat3 m_phi_matrix(const Mat2& phi);

// 3, 1 or 0 by singular values of m_phi_matrix with threshold 1e-8 * sigma_max.
int m_phi_kernel_dim(const MatSL2& phi);

// Matrix of gamma -> [a, gamma] on i su(2) coordinates, for anti-hermitian a.
Mat3 ad_matrix_antiherm(const Mat2& a);

// exp of a trace-free matrix: cosh(mu) I + sinh(mu)/mu X with mu^2 = -det X.
Mat2 exp_traceless(const Mat2& x);
// Group element exp(gamma) in SL(2,C); returned as a plain matrix since it is not trace-free.
Mat2 mat_exp(const MatISU2& gamma);

// Principal logarithm of g in SL(2,C) (trace-free result). Throws when g has eigenvalue -1.
Mat2 log_sl2(const Mat2& g);

// cosh(sqrt(w)) and sinh(sqrt(w))/sqrt(w), entire in w.
cd cosh_sqrt(cd w);
cd sinhc_sqrt(cd w);

}  // namespace hg
