#pragma once

// Parameter studies shared by the command-line tool and the acceptance run.

#include "hitchin_glue/gauge.hpp"
#include "hitchin_glue/poisson.hpp"

#include <random>
#include <vector>

namespace hg {

// Generator for one module's stream of a global seed.
std::mt19937_64 rng_stream(unsigned long long seed, unsigned long long stream);

// Least-squares slope of log y against log x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ModelCheck {
    double first_residual = 0.0;
    double second_residual = 0.0;
    double seam_jump = 0.0;
};
ModelCheck model_check(const ModelParams& plus, const NeckGrid& g);

struct WolfStudy {
    double ell = 0.0;
    std::vector<int> n_tau;
    std::vector<double> first_residual, second_residual;
    std::vector<double> order;      // log2 ratio between consecutive refinements
    std::vector<double> radius, higgs_distance;
    double higgs_slope = 0.0;
};
// Sampled on tau in [tau_min, tau_min + 6], the Higgs distance at r = 1e-2 .. 1e-5.
WolfStudy wolf_study(double ell, const std::vector<int>& n_tau = {161, 321, 641}, int n_modes = 4,
                     double tau_min = 1.0);

struct KernelStudy {
    std::vector<int> j;
    std::vector<double> max_ratio, bound, max_residual;
};
// Random right-hand sides sum_k c_k r^{p_k} e^{i a_k log r}: a unit leading term with p_0 in
// [delta + 0.1, 1] and three more with p_k - p_0 in [0.5, 2].
RadialFunction random_radial_rhs(std::mt19937_64& rng, double delta, double r_min, int n);
KernelStudy poisson_kernel_study(int j_max, int samples, const WeightConfig& w, int n = 2000, double r_min = 1e-6,
                                 unsigned long long seed = 0);

struct ApproxStudy {
    std::vector<double> R, sup, sup_outside, tau_at_sup;
    double slope = 0.0;
};
ApproxStudy approx_error_study(const std::vector<double>& Rs, double ell, const WeightConfig& w, int samples = 4001);

}  // namespace hg
