#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/linear.hpp"

#include <gtest/gtest.h>

using namespace hg;

namespace {

double dirichlet_lambda1(const NeckGrid& g) {
    const double h = g.h(), H = 0.5 * (g.tau_max - g.tau_min);
    double s = std::sin(M_PI * h / (4.0 * H));
    return 4.0 / (h * h) * s * s;
}

std::vector<Mat2> diff(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    std::vector<Mat2> o(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) o[k] = a[k] - b[k];
    return o;
}

}  // namespace

TEST(Linear, AssembledMatchesMatrixFreeAndIsSymmetric) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 40, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(1.0, 0.4)), neck_grid(cfg));
    LinearOperatorHandle L = assemble_L(p);
    EXPECT_LT(symmetry_defect(L.matrix), 1e-12);
    std::vector<Mat2> g = random_section(p.grid, 1.0, 3);
    Eigen::VectorXd lhs = L.matrix * section_to_vector(p.grid, g);
    Eigen::VectorXd rhs = section_to_vector(p.grid, apply_linear(p, g));
    EXPECT_LT((lhs - rhs).norm(), 1e-10 * rhs.norm());
    EXPECT_LT(symmetry_defect(assemble_L(to_fields(p)).matrix), 1e-12);
}

TEST(Linear, EnergyIdentity) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 48, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(0.5, -1.0)), neck_grid(cfg));
    for (unsigned long long s = 1; s <= 5; ++s) {
        std::vector<Mat2> g = random_section(p.grid, 1.0, s);
        double lhs = section_inner(p.grid, apply_linear(p, g), g);
        EXPECT_NEAR(lhs, energy(p, g), 1e-8 * std::abs(lhs));
        EXPECT_GT(lhs, 0.0);
    }
}

TEST(Linear, DiagonalSectionSeesNoHiggsTerm) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 48, 4);
    NeckPair p = sample_model(ModelParams(0.0, cd(1.0, 0.0)), neck_grid(cfg));
    NeckPair flat = sample_model(ModelParams(0.0, cd(1.0, 0.0)), neck_grid(cfg));
    for (Mat2& m : flat.phi) m.setZero();
    std::vector<Mat2> g = random_section(p.grid, 1.0, 8);
    for (Mat2& m : g) {
        m(0, 1) = 0.0;
        m(1, 0) = 0.0;
    }
    EXPECT_NEAR(section_inner(p.grid, apply_linear(p, g), g), section_inner(p.grid, apply_linear(flat, g), g), 1e-10);
}

TEST(Linear, DirichletEigenvalue) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.05, 256, 4);
    NeckPair p = sample_model(ModelParams(0.0, cd(1.0, 0.0)), neck_grid(cfg));
    LinearOperatorHandle d = assemble_delta_A(p);
    double lam = smallest_eigenvalue(d, 1e-10);
    EXPECT_NEAR(lam, dirichlet_lambda1(p.grid), 1e-7 * lam);
    double H = cfg.T + cfg.cap_length;
    EXPECT_NEAR(lam / std::pow(M_PI / (2.0 * H), 2), 1.0, 0.02);
    // with alpha = 0 and real C, the diagonal direction is in the kernel of M_phi
    EXPECT_NEAR(smallest_eigenvalue(assemble_L(p), 1e-10), lam, 1e-7 * lam);
}

TEST(Linear, LaplacianOnIntervalAndIdentity) {
    const int n = 512;
    const double h = M_PI / (n + 1);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, 2.0 / (h * h));
        if (i > 0) t.emplace_back(i, i - 1, -1.0 / (h * h));
        if (i + 1 < n) t.emplace_back(i, i + 1, -1.0 / (h * h));
    }
    LinearOperatorHandle op;
    op.kind = OperatorKind::ModeBlock;
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(t.begin(), t.end());
    EXPECT_NEAR(smallest_eigenvalue(op, 1e-12), 1.0, 1e-4);
    op.matrix.setIdentity();
    EXPECT_NEAR(smallest_eigenvalue(op, 1e-12), 1.0, 1e-14);
}

TEST(Linear, LongNeckScaling) {
    auto lam = [](double T) {
        PlumbingConfig cfg = PlumbingConfig::from_R(std::exp(-T), 161, 4);
        return smallest_eigenvalue(assemble_L(sample_model(ModelParams(0.2, cd(1.0, 0.0)), neck_grid(cfg))), 1e-10);
    };
    double L = 2.0;
    double ratio = lam(5.0) / lam(10.0);
    EXPECT_NEAR(ratio / std::pow((10.0 + L) / (5.0 + L), 2), 1.0, 0.15);
}

TEST(Linear, DiracModeKernel) {
    EXPECT_EQ(dirac_mode_kernel(0, ModelParams(0.3, 1.0)), 2);
    EXPECT_EQ(dirac_mode_kernel(0, ModelParams(-1.1, cd(0.0, 2.0))), 2);
    EXPECT_EQ(dirac_mode_kernel(1, ModelParams(0.3, 1.0)), 0);
    EXPECT_EQ(dirac_mode_kernel(1, ModelParams(0.25, 1.0)), 0);
    EXPECT_EQ(dirac_mode_kernel(1, ModelParams(0.25, 1.0), ModeSector::off_diagonal), 0);
    ModelParams zero;
    zero.C = 0.0;
    EXPECT_THROW(dirac_mode_kernel(1, zero), InvalidArgument);
}

TEST(Linear, DiracOperator) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 40, 4);
    NeckPair p = sample_model(ModelParams(0.2, cd(1.0, 0.0)), neck_grid(cfg));
    LinearOperatorHandle D = assemble_dirac(p);
    EXPECT_LT(symmetry_defect(D.matrix), 1e-12);
    EXPECT_GT(smallest_singular_value(D), 0.0);
    EXPECT_THROW(smallest_singular_value(assemble_L(p)), InvalidArgument);
    std::vector<Mat2> a = random_section(p.grid, 1.0, 2), b = random_section(p.grid, 1.0, 5), out2;
    std::vector<Mat2> out1 = apply_dirac(p, a, b, &out2);
    EXPECT_GT(sup_norm(out1) + sup_norm(out2), 0.0);
}

TEST(Linear, SweepValidation) {
    EXPECT_THROW(validate_sweep({0.1}), InsufficientSweep);
    EXPECT_THROW(validate_sweep({}), InsufficientSweep);
    EXPECT_THROW(validate_sweep({0.1, 2.0}), InvalidArgument);
    EXPECT_NO_THROW(validate_sweep({0.1, 0.01}));
}

TEST(Nonlinear, ExpansionIdentityAndQuadraticRemainder) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 48, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(1.0, 0.4)), neck_grid(cfg));
    std::vector<Mat2> zero(p.phi.size(), Mat2::Zero());
    EXPECT_EQ(sup_norm(q_term(p, zero)), 0.0);
    Remainders r0 = remainder_terms(p, zero);
    EXPECT_EQ(sup_norm(r0.R_tau) + sup_norm(r0.R_vt) + sup_norm(r0.R_phi), 0.0);

    std::vector<Mat2> g0 = random_section(p.grid, 1.0, 12);
    std::vector<double> q;
    for (double s : {1e-2, 5e-3}) {
        std::vector<Mat2> g = g0;
        for (Mat2& m : g) m *= s;
        std::vector<Mat2> direct = diff(diff(first_eq(apply_gauge(p, g)), first_eq(p)), apply_linear(p, g));
        std::vector<Mat2> qt = q_term(p, g);
        EXPECT_LT(sup_norm(diff(direct, qt)), 1e-8 * std::max(1.0, sup_norm(qt)));
        q.push_back(l2_norm(p.grid, qt));
    }
    EXPECT_NEAR(q[0] / q[1], 4.0, 0.4);

    // diagonal constant gamma commutes with a diagonal Higgs field
    std::vector<Mat2> d(p.phi.size(), Mat2::Zero());
    const int M = p.grid.M();
    for (int i = 1; i + 1 < p.grid.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            d[std::size_t(i * M + m)](0, 0) = 0.3;
            d[std::size_t(i * M + m)](1, 1) = -0.3;
        }
    EXPECT_LT(sup_norm(remainder_terms(p, d).R_phi), 1e-14);
}
