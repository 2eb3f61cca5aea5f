#include "hitchin_glue/studies.hpp"

#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/parallel.hpp"

#include <cmath>

namespace hg {

std::mt19937_64 rng_stream(unsigned long long seed, unsigned long long stream) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream), std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fit_loglog_slope: need two or more matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0 && y[k] > 0.0)) throw InvalidArgument("fit_loglog_slope: values must be positive");
        double a = std::log(x[k]), b = std::log(y[k]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ModelCheck model_check(const ModelParams& plus, const NeckGrid& g) {
    ModelParams minus(-plus.alpha, -plus.C, Side::minus);
    ModelCheck c;
    NeckPair p = sample_model(plus, g);
    c.first_residual = sup_norm(first_eq(p));
    c.second_residual = sup_norm(second_eq(p));
    c.seam_jump = glue_models(plus, minus, g).seam_jump;
    return c;
}

WolfStudy wolf_study(double ell, const std::vector<int>& n_tau, int n_modes, double tau_min) {
    WolfFamilyParams p(ell);
    WolfStudy s;
    s.ell = ell;
    s.n_tau = n_tau;
    RadialPair f = wolf_radial(p, false);
    for (int n : n_tau) {
        NeckPair q = sample_radial(f, NeckGrid(tau_min, tau_min + 6.0, n, n_modes));
        s.first_residual.push_back(sup_norm(first_eq(q)));
        s.second_residual.push_back(sup_norm(second_eq(q)));
    }
    for (std::size_t k = 1; k < n_tau.size(); ++k)
        s.order.push_back(std::log(s.first_residual[k - 1] / s.first_residual[k]) /
                          std::log(double(n_tau[k] - 1) / double(n_tau[k - 1] - 1)));

    RadialPair d = wolf_radial(p, true);
    ModelParams m = p.model_limit();
    Mat2 model;
    model << m.C, 0.0, 0.0, -m.C;
    for (double r : {1e-2, 1e-3, 1e-4, 1e-5}) {
        Mat2 higgs = -d(-std::log(r)).phi.v;
        s.radius.push_back(r);
        s.higgs_distance.push_back((higgs - model).norm());
    }
    s.higgs_slope = fit_loglog_slope(s.radius, s.higgs_distance);
    return s;
}

RadialFunction random_radial_rhs(std::mt19937_64& rng, double delta, double r_min, int n) {
    // The leading term dominates near r = 0 so that the tail fit sees a clean power.
    std::uniform_real_distribution<double> lead(delta + 0.1, 1.0), gap(0.5, 2.0), freq(-2.0, 2.0), coef(-1.0, 1.0);
    struct Term {
        cd c;
        double p, a;
    };
    std::vector<Term> terms(4);
    const double p0 = lead(rng);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        Term& t = terms[k];
        t.p = k == 0 ? p0 : p0 + gap(rng);
        t.a = freq(rng);
        double re = coef(rng), im = coef(rng);
        t.c = k == 0 ? std::polar(1.0, M_PI * re) : cd(re, im);
    }
    return RadialFunction::sample(
        [&](double r) {
            cd s = 0.0;
            for (const Term& t : terms) s += t.c * std::pow(r, t.p) * std::exp(cd(0.0, t.a * std::log(r)));
            return s;
        },
        r_min, n);
}

KernelStudy poisson_kernel_study(int j_max, int samples, const WeightConfig& w, int n, double r_min,
                                 unsigned long long seed) {
    if (j_max < 1 || samples < 1) throw InvalidArgument("poisson_kernel_study: need j_max >= 1 and samples >= 1");
    KernelStudy s;
    s.j.resize(std::size_t(j_max));
    s.max_ratio.assign(std::size_t(j_max), 0.0);
    s.max_residual.assign(std::size_t(j_max), 0.0);
    s.bound.resize(std::size_t(j_max));
    parallel_for(j_max, [&](int k) {
        const int j = k + 1;
        std::mt19937_64 rng = rng_stream(seed, 100 + unsigned(j));
        double ratio = 0.0, res = 0.0;
        for (int t = 0; t < samples; ++t) {
            RadialFunction h = random_radial_rhs(rng, w.delta, r_min, n);
            RadialFunction u = solve_mode_j(j, h, w);
            ratio = std::max(ratio, weighted_norm(u, w.delta_prime, Measure::r_inv_dr) /
                                        weighted_norm(h, w.delta, Measure::r_inv_dr));
            res = std::max(res, mode_residual(j, u, h));
        }
        s.j[std::size_t(k)] = j;
        s.max_ratio[std::size_t(k)] = ratio;
        s.max_residual[std::size_t(k)] = res;
        s.bound[std::size_t(k)] = 4.0 / (double(j) * j);
    });
    return s;
}

ApproxStudy approx_error_study(const std::vector<double>& Rs, double ell, const WeightConfig& w, int samples) {
    if (Rs.size() < 2) throw InsufficientSweep("approx_error_study: need at least two values of R");
    auto [plus, minus] = wolf_fixture(ell);
    ApproxStudy s;
    s.R = Rs;
    s.sup.resize(Rs.size());
    s.sup_outside.resize(Rs.size());
    s.tau_at_sup.resize(Rs.size());
    parallel_for(int(Rs.size()), [&](int k) {
        PlumbingConfig cfg = PlumbingConfig::from_R(Rs[std::size_t(k)], 201, 4);
        ApproximatePair app(plus, minus, cfg, w);
        ErrorReport e = hitchin_error(app, samples);
        s.sup[std::size_t(k)] = e.sup;
        s.sup_outside[std::size_t(k)] = e.sup_outside;
        s.tau_at_sup[std::size_t(k)] = e.tau_at_sup;
    });
    s.slope = fit_loglog_slope(s.R, s.sup);
    return s;
}

}  // namespace hg
