#pragma once

// Fixed-point corrector gamma -> -G (F(0) + Q(gamma)) with G the inverse of L frozen at the
// approximate pair.

#include "hitchin_glue/linear.hpp"
#include "hitchin_glue/neck.hpp"

#include <memory>
#include <vector>

namespace hg {

// Reference connection B = B_vt dvartheta, constant along the neck, for the graph norm.
struct GraphNormConfig {
    Mat2 B_vt = Mat2::Zero();
    int order = 2;  // 1 or 2

    static GraphNormConfig from_model(const ModelParams& p, int order = 2);
};

// sqrt of the quadrature of |gamma|^2 + |nabla_B gamma|^2 (+ |nabla_B^2 gamma|^2 for order 2).
double graph_norm(const NeckGrid& g, const std::vector<Mat2>& gamma, const GraphNormConfig& cfg);

// LU factorization of an assembled L, reused across solves.
class GreenOperator {
public:
    explicit GreenOperator(const LinearOperatorHandle& op);

    // L^{-1} rhs on interior nodes. Throws SingularOperator when the relative residual
    // of the solve exceeds 1e-9.
    std::vector<Mat2> apply(const std::vector<Mat2>& rhs) const;
    const NeckGrid& grid() const { return op_.grid; }
    const LinearOperatorHandle& op() const { return op_; }

private:
    LinearOperatorHandle op_;
    std::shared_ptr<const void> lu_;
};

struct GreenReport {
    double relative_residual = 0.0;
    double amplification = 0.0;  // ||G rhs||_{H^2_B} / ||rhs||_{L^2}
};
std::vector<Mat2> apply_G(const LinearOperatorHandle& op, const std::vector<Mat2>& rhs,
                          const GraphNormConfig& norm = {}, GreenReport* report = nullptr);
Field2D apply_G(const LinearOperatorHandle& op, const Field2D& rhs);

struct CorrectorOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double epsilon = 0.1;
    // Constant in sigma_R = 1 / (C T^{2+epsilon}); <= 0 means measure it.
    double C = 0.0;
    GraphNormConfig norm;
    unsigned long long seed = 0;
    int lipschitz_samples = 20;
};

struct CorrectorState {
    std::vector<Mat2> gamma;
    std::vector<double> residual_history;     // sup residual before each step, then final
    std::vector<double> step_norms;           // ||gamma_{n+1} - gamma_n||_{H^2_B}
    std::vector<double> contraction_factors;  // step_norms[n] / step_norms[n-1]
    double sigma_R = 0.0;
    double gamma_norm = 0.0;
    double C_G = 0.0, C_Q = 0.0;
    double T = 0.0;
    int iterations = 0;
    bool converged = false;
    bool in_ball = false;          // ||gamma||_{H^2_B} <= sigma_R at every iterate
    bool contracting = false;      // every ratio from the second step on is < 1
};

struct CorrectorResult {
    NeckPair pair;
    CorrectorState state;
    double residual_before = 0.0;
    double residual_after = 0.0;
};

// Constants of the contraction estimate at the pair: C_G from the amplification of G over
// random and actual right-hand sides divided by T^2; C_Q from sampled Lipschitz quotients of Q
// in the ball of radius r.
double measure_green_constant(const GreenOperator& G, const NeckPair& p, const GraphNormConfig& norm, double T,
                              unsigned long long seed, int samples);
double measure_lipschitz_constant(const NeckPair& p, const GraphNormConfig& norm, double r, unsigned long long seed,
                                  int samples);

// Throws ContractionFailure after three consecutive ratios >= 1, on a non-finite residual, or when
// max_iter steps end above the tolerance.
CorrectorResult correct(const NeckPair& app, double R, const CorrectorOptions& opt = {});

}  // namespace hg
