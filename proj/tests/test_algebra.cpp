#include "hitchin_glue/algebra.hpp"
#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/jet.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <random>

using namespace hg;

namespace {

const cd I(0.0, 1.0);

Mat2 rand_sl2(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Mat2 m;
    m << cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng)), 0.0;
    m(1, 1) = -m(0, 0);
    return m;
}

Mat2 rand_herm(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat2 m;
    double a = n(rng);
    cd b(n(rng), n(rng));
    m << a, b, std::conj(b), -a;
    return m;
}

// Nested commutators written out with raw products.
Mat2 m_phi_oracle(const Mat2& p, const Mat2& g) {
    Mat2 ps = p.adjoint();
    Mat2 pg = p * g - g * p, psg = ps * g - g * ps;
    return ps * pg - pg * ps + p * psg - psg * p;
}

double re_inner(const Mat2& a, const Mat2& b) { return (a * b.adjoint()).trace().real(); }

}  // namespace

TEST(Algebra, CommutatorExamples) {
    MatSL2 x(1.0, 0.0, 0.0, -1.0), y(2.0, 0.0, 0.0, -2.0);
    EXPECT_LT(commutator(x, y).mat().norm(), 1e-15);
    MatSL2 e(0.0, 1.0, 0.0, 0.0), f(0.0, 0.0, 1.0, 0.0);
    Mat2 h;
    h << 1.0, 0.0, 0.0, -1.0;
    EXPECT_LT((commutator(e, f).mat() - h).norm(), 1e-15);
    EXPECT_LT(commutator(e, e).mat().norm(), 1e-15);
}

TEST(Algebra, TypeInvariantsRejectBadInput) {
    EXPECT_THROW(MatSL2(1.0, 0.0, 0.0, 1.0), InvalidArgument);
    Mat2 nonherm;
    nonherm << 1.0, I, I, -1.0;
    EXPECT_THROW(MatISU2{nonherm}, InvalidArgument);
}

TEST(Algebra, MPhiHandExamples) {
    MatSL2 e(0.0, 1.0, 0.0, 0.0), h(1.0, 0.0, 0.0, -1.0);
    MatISU2 g(h.mat());
    Mat2 expect;
    expect << 4.0, 0.0, 0.0, -4.0;
    EXPECT_LT((m_phi_apply(e, g).mat() - expect).norm(), 1e-14);
    EXPECT_LT(m_phi_apply(h, g).mat().norm(), 1e-15);
    EXPECT_LT(m_phi_apply(MatSL2(), g).mat().norm(), 1e-15);
}

TEST(Algebra, MPhiMatchesOracleAndIsSymmetric) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        Mat2 p = rand_sl2(rng), g1 = rand_herm(rng), g2 = rand_herm(rng);
        Mat2 m1 = m_phi_apply(p, g1);
        EXPECT_LT((m1 - m_phi_oracle(p, g1)).norm(), 1e-12);
        EXPECT_LT((m1 - m1.adjoint()).norm(), 1e-12);
        EXPECT_LT(std::abs(m1.trace()), 1e-12);
        EXPECT_NEAR(re_inner(m1, g2), re_inner(g1, m_phi_apply(p, g2)), 1e-10);
        Mat2 c = p * g1 - g1 * p;
        EXPECT_NEAR(re_inner(m1, g1), 2.0 * c.squaredNorm(), 1e-10);
    }
}

TEST(Algebra, MPhiUnitaryEquivariance) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        Mat2 p = rand_sl2(rng), g = rand_herm(rng);
        Mat2 u = exp_traceless(I * rand_herm(rng));
        Mat2 ui = u.adjoint();
        Mat2 lhs = ui * m_phi_apply(p, g) * u;
        Mat2 rhs = m_phi_apply(Mat2(ui * p * u), Mat2(ui * g * u));
        EXPECT_LT((lhs - rhs).norm(), 1e-10);
    }
}

TEST(Algebra, KernelDimensionLaw) {
    EXPECT_EQ(m_phi_kernel_dim(MatSL2(0.0, 1.0, 0.0, 0.0)), 0);
    EXPECT_EQ(m_phi_kernel_dim(MatSL2(1.0, 0.0, 0.0, -1.0)), 1);
    EXPECT_EQ(m_phi_kernel_dim(MatSL2()), 3);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        Mat2 p;
        if (k % 3 == 0) {
            // normal: unitary conjugate of diag(lambda, -lambda)
            Mat2 u = exp_traceless(I * rand_herm(rng));
            cd lam(double(k % 7) - 3.0, 0.5);
            Mat2 d;
            d << lam, 0.0, 0.0, -lam;
            p = u * d * u.adjoint();
        } else {
            p = rand_sl2(rng);
        }
        // brute-force rank deficiency of the 3x3 real matrix
        Mat3 m;
        for (int b = 0; b < 3; ++b) {
            Mat2 img = m_phi_oracle(p, isu2_basis()[std::size_t(b)]);
            for (int a = 0; a < 3; ++a) m(a, b) = 0.5 * re_inner(img, isu2_basis()[std::size_t(a)]);
        }
        Eigen::JacobiSVD<Mat3> svd(m);
        auto s = svd.singularValues();
        int def = 0;
        for (int a = 0; a < 3; ++a) def += s(a) <= 1e-8 * std::max(s(0), 1e-300) || s(0) == 0.0;
        EXPECT_EQ(m_phi_kernel_dim(MatSL2(p)), def) << "sample " << k;
    }
}

TEST(Algebra, MatExp) {
    EXPECT_LT((mat_exp(MatISU2()) - Mat2::Identity()).norm(), 1e-15);
    Mat2 d;
    d << 0.7, 0.0, 0.0, -0.7;
    Mat2 ed;
    ed << std::exp(0.7), 0.0, 0.0, std::exp(-0.7);
    EXPECT_LT((mat_exp(MatISU2(d)) - ed).norm(), 1e-13);
    Mat2 s1;
    s1 << 0.0, 1.0, 1.0, 0.0;
    // Taylor series oracle
    Mat2 term = Mat2::Identity(), sum = Mat2::Identity();
    for (int k = 1; k < 30; ++k) {
        term = term * s1 / double(k);
        sum += term;
    }
    EXPECT_LT((mat_exp(MatISU2(s1)) - sum).norm(), 1e-12);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        Mat2 g = rand_herm(rng);
        Mat2 e = mat_exp(MatISU2(g)), em = mat_exp(MatISU2(Mat2(-g)));
        EXPECT_NEAR(std::abs(e.determinant() - 1.0), 0.0, 1e-10);
        EXPECT_LT((e * em - Mat2::Identity()).norm(), 1e-10);
    }
}

TEST(Algebra, LogInvertsExp) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        Mat2 x = 0.8 * rand_sl2(rng);
        EXPECT_LT((log_sl2(exp_traceless(x)) - x).norm(), 1e-10);
    }
}

TEST(Jet, LeibnizAgainstFiniteDifferences) {
    // f(t) = exp(x(t)) g(t) with matrix jets; compare derivatives to central differences.
    auto eval = [](double t) {
        Mat2 x;
        x << 0.3 * t, t * t, std::sin(t), -0.3 * t;
        return x;
    };
    auto jet = [](double t) {
        MJet x;
        x.v << 0.3 * t, t * t, std::sin(t), -0.3 * t;
        x.d << 0.3, 2.0 * t, std::cos(t), -0.3;
        x.dd << 0.0, 2.0, -std::sin(t), 0.0;
        return x;
    };
    const double t = 0.4, h = 1e-4;
    MJet e = exp_traceless(jet(t));
    Mat2 fp = exp_traceless(eval(t + h)), fm = exp_traceless(eval(t - h)), f0 = exp_traceless(eval(t));
    EXPECT_LT((e.v - f0).norm(), 1e-13);
    EXPECT_LT((e.d - (fp - fm) / (2 * h)).norm(), 1e-7);
    EXPECT_LT((e.dd - (fp - 2.0 * f0 + fm) / (h * h)).norm(), 1e-5);
    MJet l = log_sl2(e);
    EXPECT_LT((l.d - jet(t).d).norm(), 1e-10);
    EXPECT_LT((l.dd - jet(t).dd).norm(), 1e-9);
}
