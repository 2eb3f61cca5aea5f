#include "hitchin_glue/algebra.hpp"

#include "hitchin_glue/errors.hpp"

#include <cmath>

namespace hg {

namespace {
constexpr double kTraceTol = 1e-12;
const cd I(0.0, 1.0);
}  // namespace

MatSL2::MatSL2(const Mat2& m) : m_(m) {
    if (std::abs(m.trace()) > kTraceTol * std::max(1.0, m.norm()))
        throw InvalidArgument("MatSL2 requires a trace-free matrix");
}

MatSL2::MatSL2(cd a, cd b, cd c, cd d) {
    Mat2 m;
    m << a, b, c, d;
    *this = MatSL2(m);
}

MatISU2::MatISU2(const Mat2& m) : m_(m) {
    double scale = std::max(1.0, m.norm());
    if (std::abs(m.trace()) > kTraceTol * scale)
        throw InvalidArgument("MatISU2 requires a trace-free matrix");
    if ((m - m.adjoint()).norm() > kTraceTol * scale)
        throw InvalidArgument("MatISU2 requires a hermitian matrix");
}

MatISU2 MatISU2::from_coords(const Vec3& c) { return MatISU2(from_isu2_coords(c)); }

Vec3 MatISU2::coords() const { return isu2_coords(m_); }

const std::array<Mat2, 3>& isu2_basis() {
    static const std::array<Mat2, 3> basis = [] {
        std::array<Mat2, 3> b;
        b[0] << 1, 0, 0, -1;
        b[1] << 0, 1, 1, 0;
        b[2] << 0, -I, I, 0;
        return b;
    }();
    return basis;
}

Vec3 isu2_coords(const Mat2& m) {
    // tr(sigma_a m)/2 is real for hermitian m
    return Vec3(0.5 * (m(0, 0) - m(1, 1)).real(), 0.5 * (m(0, 1) + m(1, 0)).real(),
                0.5 * (I * (m(0, 1) - m(1, 0))).real());
}

Mat2 from_isu2_coords(const Vec3& c) {
    Mat2 m;
    m << c[0], cd(c[1], -c[2]), cd(c[1], c[2]), -c[0];
    return m;
}

double inner(const Mat2& a, const Mat2& b) { return (a.array() * b.array().conjugate()).sum().real(); }

double frob2(const Mat2& a) { return a.squaredNorm(); }

Mat2 adj(const Mat2& a) { return a.adjoint(); }

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

Mat2 traceless(const Mat2& a) {
    Mat2 r = a;
    cd h = 0.5 * a.trace();
    r(0, 0) -= h;
    r(1, 1) -= h;
    return r;
}

MatSL2 commutator(const MatSL2& x, const MatSL2& y) { return MatSL2(comm(x.mat(), y.mat())); }

Mat2 m_phi_apply(const Mat2& phi, const Mat2& gamma) {
    Mat2 ps = phi.adjoint();
    return comm(ps, comm(phi, gamma)) + comm(phi, comm(ps, gamma));
}

MatISU2 m_phi_apply(const MatSL2& phi, const MatISU2& gamma) {
    Mat2 r = m_phi_apply(phi.mat(), gamma.mat());
    // exact hermitian by construction; symmetrize away rounding
    return MatISU2(0.5 * (r + r.adjoint()));
}

Mat3 m_phi_matrix(const Mat2& phi) {
    Mat3 m;
    const auto& b = isu2_basis();
    for (int j = 0; j < 3; ++j) m.col(j) = isu2_coords(m_phi_apply(phi, b[j]));
    return m;
}

int m_phi_kernel_dim(const MatSL2& phi) {
    Eigen::JacobiSVD<Mat3> svd(m_phi_matrix(phi.mat()));
    const Vec3& s = svd.singularValues();
    double smax = s[0];
    if (smax == 0.0) return 3;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (s[i] <= 1e-8 * smax) ++k;
    return k;
}

Mat3 ad_matrix_antiherm(const Mat2& a) {
    Mat3 m;
    const auto& b = isu2_basis();
    for (int j = 0; j < 3; ++j) m.col(j) = isu2_coords(comm(a, b[j]));
    return m;
}

cd cosh_sqrt(cd w) {
    if (std::abs(w) < 1.0) {
        cd term = 1.0, sum = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= w / double((2 * k - 1) * (2 * k));
            sum += term;
        }
        return sum;
    }
    return std::cosh(std::sqrt(w));
}

cd sinhc_sqrt(cd w) {
    if (std::abs(w) < 1.0) {
        cd term = 1.0, sum = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= w / double((2 * k) * (2 * k + 1));
            sum += term;
        }
        return sum;
    }
    cd s = std::sqrt(w);
    return std::sinh(s) / s;
}

Mat2 exp_traceless(const Mat2& x) {
    cd w = -x.determinant();
    return cosh_sqrt(w) * Mat2::Identity() + sinhc_sqrt(w) * x;
}

Mat2 mat_exp(const MatISU2& gamma) { return exp_traceless(gamma.mat()); }

Mat2 log_sl2(const Mat2& g) {
    cd c = 0.5 * g.trace();
    cd mu = std::acosh(c);
    cd s = sinhc_sqrt(mu * mu);
    if (std::abs(s) < 1e-12) throw InvalidArgument("log_sl2: matrix has eigenvalue -1");
    Mat2 x = g - c * Mat2::Identity();
    return x / s;
}

}  // namespace hg
