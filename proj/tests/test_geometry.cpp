#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/field_io.hpp"
#include "hitchin_glue/geometry.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <random>

using namespace hg;

namespace {
const cd I(0.0, 1.0);
}

TEST(Plumbing, FromRAndInvariants) {
    PlumbingConfig c = PlumbingConfig::from_R(0.1, 64, 4);
    EXPECT_DOUBLE_EQ(c.rho, 0.0025);
    EXPECT_NEAR(c.T, std::log(10.0), 1e-14);
    EXPECT_NEAR(c.tau_seam(), std::log(20.0), 1e-14);
    EXPECT_THROW(PlumbingConfig::from_R(1.2, 64, 4), InvalidArgument);
    EXPECT_THROW(PlumbingConfig::from_R(0.1, 8, 4), InvalidArgument);
    EXPECT_THROW(PlumbingConfig::from_R(0.1, 64, 2), InvalidArgument);
    c.rho = 0.3;
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Grid, QuadratureSumsToLength) {
    PlumbingConfig c = PlumbingConfig::from_R(0.01, 101, 4, 2.0);
    NeckGrid g = neck_grid(c);
    EXPECT_NEAR(g.tau_min, -(c.T + 2.0), 1e-14);
    double s = 0.0;
    for (double w : g.quadrature_weights()) {
        EXPECT_GT(w, 0.0);
        s += w;
    }
    EXPECT_NEAR(s, g.tau_max - g.tau_min, 1e-12);
    for (int i = 1; i < g.n_tau; ++i) EXPECT_GT(g.tau(i), g.tau(i - 1));
}

TEST(Coordinates, Examples) {
    auto [t0, th0] = coord_z_to_cyl(1.0);
    EXPECT_NEAR(t0, 0.0, 1e-15);
    EXPECT_NEAR(th0, 0.0, 1e-15);
    auto [t1, th1] = coord_z_to_cyl(std::exp(-1.0));
    EXPECT_NEAR(t1, 1.0, 1e-14);
    EXPECT_NEAR(th1, 0.0, 1e-15);
    auto [t2, th2] = coord_z_to_cyl(I * std::exp(-2.0));
    EXPECT_NEAR(t2, 2.0, 1e-14);
    EXPECT_NEAR(th2, -M_PI / 2, 1e-14);
    EXPECT_THROW(coord_z_to_cyl(0.0), InvalidArgument);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.01, 1.0), a(-3.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        cd z = std::polar(u(rng), a(rng));
        auto [t, th] = coord_z_to_cyl(z);
        EXPECT_LT(std::abs(cyl_to_z(t, th) - z), 1e-12);
    }
}

TEST(Coordinates, GlueMap) {
    cd t(0.01, 0.0);
    EXPECT_LT(std::abs(glue_map(t, t) - 1.0), 1e-15);
    EXPECT_LT(std::abs(glue_map(0.1, 0.01) - 0.1), 1e-15);
    EXPECT_LT(std::abs(glue_map(0.2 * I, 0.04) - (-0.2 * I)), 1e-15);
    cd z(0.05, 0.07);
    EXPECT_LT(std::abs(glue_map(glue_map(z, t), t) - z), 1e-14);
    EXPECT_THROW(glue_map(0.0, t), InvalidArgument);
    // dz/z = -dw/w: numerical log-derivatives of w = t/z
    const double h = 1e-6;
    cd dw = (glue_map(z * std::exp(h), t) - glue_map(z * std::exp(-h), t)) / (2 * h);
    EXPECT_LT(std::abs(dw / glue_map(z, t) + 1.0), 1e-8);
}

TEST(Field, SynthesisAnalysisRoundTrip) {
    NeckGrid g(0.0, 3.0, 20, 5);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    Field2D f(g, Tag::scalar_section);
    for (Mat2& m : f.coef) m << cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng));
    Field2D back = Field2D::analyze(g, f.tag, f.loc, f.synthesize());
    for (std::size_t k = 0; k < f.coef.size(); ++k) EXPECT_LT((back.coef[k] - f.coef[k]).norm(), 1e-12);
}

TEST(Field, ThetaDerivativeIsExactOnModes) {
    const int N = 4, M = 2 * N + 1;
    Eigen::MatrixXd D = theta_derivative_matrix(M);
    for (int j = 0; j <= N; ++j) {
        Eigen::VectorXd f(M), df(M);
        for (int m = 0; m < M; ++m) {
            double th = 2 * M_PI * m / M;
            f(m) = std::sin(j * th + 0.3);
            df(m) = j * std::cos(j * th + 0.3);
        }
        EXPECT_LT((D * f - df).norm(), 1e-12) << "mode " << j;
    }
}

TEST(Field, LongitudinalDerivativeOrder) {
    double prev = 0.0;
    std::vector<double> rates;
    for (int n : {41, 81, 161}) {
        double h = 2.0 / (n - 1);
        std::vector<double> f(static_cast<std::size_t>(n)), ex(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            f[std::size_t(i)] = std::exp(1.5 * i * h);
            ex[std::size_t(i)] = 1.5 * f[std::size_t(i)];
        }
        std::vector<double> d = d_tau(f, h);
        double e = 0.0;
        for (int i = 0; i < n; ++i) e = std::max(e, std::abs(d[std::size_t(i)] - ex[std::size_t(i)]));
        if (prev > 0.0) rates.push_back(std::log2(prev / e));
        prev = e;
    }
    for (double r : rates) EXPECT_GE(r, 1.9);
}

TEST(Field, HodgeStar) {
    NeckGrid g(0.0, 1.0, 3, 4);
    Field2D f(g, Tag::two_form_dr_dtheta);
    for (int i = 0; i < 3; ++i) f.at(0, i) = Mat2::Identity();
    Field2D s = hodge_star_2form(f);
    EXPECT_EQ(s.tag, Tag::scalar_section);
    EXPECT_NEAR(s.at(0, 0)(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(s.at(0, 2)(0, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_THROW(hodge_star_2form(s), InvalidArgument);
    // dzbar^dz/|z|^2 = 2i dr^dtheta / r, so its star is the constant 2i
    Field2D q(g, Tag::two_form_dr_dtheta);
    for (int i = 0; i < 3; ++i) q.at(0, i) = Mat2::Identity() * (2.0 * I / std::exp(-g.tau(i)));
    Field2D sq = hodge_star_2form(q);
    for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(sq.at(0, i)(0, 0) - 2.0 * I), 1e-14);
}

TEST(FieldIO, JsonAndBinaryRoundTrip) {
    NeckGrid g(-1.0, 2.0, 7, 4);
    Field2D f(g, Tag::higgs_dz_over_z);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (Mat2& m : f.coef) m << cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng));
    const std::string pj = testing::TempDir() + "hg_field.json", pb = testing::TempDir() + "hg_field.bin";
    write_field_json(f, pj);
    write_field_binary(f, pb);
    for (const Field2D& b : {read_field_json(pj), read_field_binary(pb)}) {
        EXPECT_EQ(b.tag, f.tag);
        EXPECT_TRUE(b.grid.same_as(g));
        for (std::size_t k = 0; k < f.coef.size(); ++k) EXPECT_EQ(b.coef[k], f.coef[k]);
    }
    std::remove(pj.c_str());
    std::remove(pb.c_str());
    EXPECT_THROW(read_field_json("/nonexistent/x.json"), InvalidArgument);
}
