#include "hitchin_glue/corrector.hpp"
#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/gauge.hpp"

#include <gtest/gtest.h>

using namespace hg;

namespace {

double max_diff(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, (a[k] - b[k]).norm());
    return e;
}

}  // namespace

TEST(Green, InvertsTheForwardOperator) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 60, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(1.0, 0.4)), neck_grid(cfg));
    LinearOperatorHandle L = assemble_L(p);
    std::vector<Mat2> g0 = random_section(p.grid, 1.0, 21);
    GreenReport rep;
    std::vector<Mat2> g = apply_G(L, apply_linear(p, g0), GraphNormConfig{}, &rep);
    EXPECT_LT(max_diff(g, g0), 1e-9);
    EXPECT_LT(rep.relative_residual, 1e-9);
    GreenOperator G(L);
    EXPECT_LT(max_diff(G.apply(apply_linear(p, g0)), g0), 1e-9);
}

TEST(Green, FirstEigenvectorAmplification) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 60, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(1.0, 0.4)), neck_grid(cfg));
    LinearOperatorHandle L = assemble_L(p);
    EigenResult e = smallest_eigenpairs(L.matrix, 1, 1e-12, 0);
    std::vector<Mat2> v = vector_to_section(p.grid, e.vectors.col(0));
    std::vector<Mat2> g = GreenOperator(L).apply(v);
    double amp = section_to_vector(p.grid, g).norm() / section_to_vector(p.grid, v).norm();
    EXPECT_NEAR(amp * e.values[0], 1.0, 1e-8);
}

TEST(Green, GraphNormOfConstantDiagonal) {
    NeckGrid g(0.0, 1.0, 11, 4);
    std::vector<Mat2> s(std::size_t(g.M() * g.n_tau), Mat2::Zero());
    for (Mat2& m : s) m(0, 0) = 1.0, m(1, 1) = -1.0;
    // no derivatives: only |gamma|^2 = 2 integrated over [0,1] x circle
    EXPECT_NEAR(graph_norm(g, s, GraphNormConfig{}), std::sqrt(2.0 * 2.0 * M_PI), 1e-12);
}

TEST(Corrector, ExactInputNeedsNoCorrection) {
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 60, 4);
    NeckPair p = sample_model(ModelParams(0.3, cd(1.0, 0.4)), neck_grid(cfg));
    CorrectorResult r = correct(p, 0.1);
    EXPECT_EQ(r.state.iterations, 1);
    EXPECT_TRUE(r.state.converged);
    EXPECT_LT(sup_norm(r.state.gamma), 1e-15);
    EXPECT_LT(r.residual_after, 1e-12);
}

TEST(Corrector, ApproximatePairConverges) {
    NeckPair app = make_background(Background::approx, 0.1, 121, 4);
    CorrectorOptions opt;
    opt.norm = GraphNormConfig::from_model(wolf_fixture(0.5).first.model);
    CorrectorResult r = correct(app, 0.1, opt);
    EXPECT_TRUE(r.state.converged);
    EXPECT_TRUE(r.state.contracting);
    EXPECT_LE(r.residual_after, 1e-8);
    EXPECT_GE(r.residual_before / r.residual_after, 1e3);
    EXPECT_GT(r.state.C_G, 0.0);
    EXPECT_GT(r.state.C_Q, 0.0);
    EXPECT_NEAR(r.state.sigma_R, 1.0 / (std::max(r.state.C_G, r.state.C_Q) * std::pow(r.state.T, 2.1)), 1e-12);
    // a second pass starting from the corrected pair has (almost) nothing left to do
    CorrectorResult again = correct(r.pair, 0.1, opt);
    EXPECT_LT(graph_norm(app.grid, again.state.gamma, opt.norm), 1e-6);
}

TEST(Corrector, ContractionFailureIsReported) {
    NeckPair app = make_background(Background::approx, 0.6, 24, 4);
    CorrectorOptions opt;
    opt.max_iter = 30;
    try {
        correct(app, 0.6, opt);
        ADD_FAILURE() << "expected ContractionFailure";
    } catch (const ContractionFailure& e) {
        EXPECT_NE(std::string(e.what()).find("R = 0.6"), std::string::npos) << e.what();
    }
    NeckPair worse = make_background(Background::approx, 0.9, 24, 4);
    EXPECT_THROW(correct(worse, 0.9, opt), ContractionFailure);
}
