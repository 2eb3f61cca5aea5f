#include "hitchin_glue/gauge.hpp"

#include "hitchin_glue/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hg {

namespace {

const cd I(0.0, 1.0);
const double kLog43 = std::log(4.0 / 3.0);

double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}
double smoothstep_d(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return 30.0 * x * x * (x - 1.0) * (x - 1.0);
}
double smoothstep_dd(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return 60.0 * x * (2.0 * x * x - 3.0 * x + 1.0);
}

Mat2 sigma3() {
    Mat2 s;
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

}  // namespace

CutoffProfile::CutoffProfile(double r) : R(r) {
    if (!(r > 0.0)) throw InvalidArgument("CutoffProfile: need R > 0");
    if (r >= 1.0) throw CutoffSupportError("cutoff support [0, R] must lie inside the unit disk, got R = " + std::to_string(r));
}

// x = log(r/R) / log(3/4) = (tau + log R) / log(4/3)
double CutoffProfile::value(double r) const { return smoothstep(std::log(r / R) / std::log(0.75)); }
double CutoffProfile::r_dr(double r) const { return -smoothstep_d(std::log(r / R) / std::log(0.75)) / kLog43; }
double CutoffProfile::r_dr2(double r) const {
    return smoothstep_dd(std::log(r / R) / std::log(0.75)) / (kLog43 * kLog43);
}

SJet CutoffProfile::tau_jet(double tau) const {
    double x = (tau + std::log(R)) / kLog43;
    return {smoothstep(x), smoothstep_d(x) / kLog43, smoothstep_dd(x) / (kLog43 * kLog43)};
}

double CutoffProfile::constant(int samples) const {
    double c = 0.0;
    for (int k = 0; k <= samples; ++k) {
        double r = R * (0.5 + 0.6 * k / samples);
        c = std::max(c, std::abs(r_dr(r)) + std::abs(r_dr2(r)));
    }
    return c;
}

double PerturbedInput::det_residual() const {
    std::vector<Mat2> a = phi0.synthesize(), b = phi1.synthesize(), c = phi2.synthesize();
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        cd p0 = a[k](0, 0);
        worst = std::max(worst, std::abs(2.0 * base.C * p0 + p0 * p0 + b[k](0, 0) * c[k](0, 0)));
    }
    return worst;
}

namespace {

// Fourth-order d/dtau along tau rows of a nodal array (one-sided at the ends).
std::vector<Mat2> d_tau_rows(const NeckGrid& g, const std::vector<Mat2>& f) {
    const int M = g.M(), n = g.n_tau;
    const double h = g.h();
    if (n < 5) throw InvalidArgument("d_tau_rows: need at least 5 tau nodes");
    auto at = [&](int i, int m) -> const Mat2& { return f[std::size_t(i * M + m)]; };
    std::vector<Mat2> out(f.size());
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < n; ++i) {
            Mat2 d;
            if (i >= 2 && i + 2 < n)
                d = (at(i - 2, m) - 8.0 * at(i - 1, m) + 8.0 * at(i + 1, m) - at(i + 2, m)) / (12.0 * h);
            else if (i < 2)
                d = (-25.0 * at(i, m) + 48.0 * at(i + 1, m) - 36.0 * at(i + 2, m) + 16.0 * at(i + 3, m) -
                     3.0 * at(i + 4, m)) / (12.0 * h);
            else
                d = (25.0 * at(i, m) - 48.0 * at(i - 1, m) + 36.0 * at(i - 2, m) - 16.0 * at(i - 3, m) +
                     3.0 * at(i - 4, m)) / (12.0 * h);
            out[std::size_t(i * M + m)] = d;
        }
    return out;
}

}  // namespace

Diagonalization diagonalize_higgs(const PerturbedInput& in) {
    const NeckGrid& g = in.phi0.grid;
    if (!g.same_as(in.phi1.grid) || !g.same_as(in.phi2.grid))
        throw InvalidArgument("diagonalize_higgs: perturbations live on different grids");
    const cd C = in.base.C;
    std::vector<Mat2> a = in.phi0.synthesize(), b = in.phi1.synthesize(), c = in.phi2.synthesize();
    std::vector<Mat2> G(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        cd p0 = a[k](0, 0), p1 = b[k](0, 0), p2 = c[k](0, 0);
        cd den = 2.0 * C + p0;
        if (std::abs(den) < 0.1 * std::abs(C))
            throw NearSingularDenominator("|2C + phi0| < 0.1 |C|: the Higgs field is not uniformly diagonalizable");
        cd d0 = -p0 / den, d1 = -p1 / den, d2 = -p2 / den;
        Mat2 m;
        m << 1.0, d1, -d2, 1.0;
        G[k] = m / std::sqrt(1.0 + d0);
    }
    // beta from the sigma_3 part of A_1 = g_p^* A_mod: A_zbar = alpha sigma3 and
    // A1_zbar = g^{-1} A_zbar g + g^{-1} (d_tau g + i d_vt g) / 2.
    std::vector<Mat2> dt = d_tau_rows(g, G), dv = d_vt(g, G);
    std::vector<Mat2> beta(a.size(), Mat2::Zero());
    const Mat2 Azb = in.base.alpha * sigma3();
    for (std::size_t k = 0; k < a.size(); ++k) {
        Mat2 gi = G[k].inverse();
        Mat2 A1 = gi * Azb * G[k] + 0.5 * gi * (dt[k] + I * dv[k]);
        beta[k](0, 0) = 0.5 * (A1(0, 0) - A1(1, 1)).real() - in.base.alpha;
    }
    return {Field2D::analyze(g, Tag::scalar_section, Location::nodes, G),
            Field2D::analyze(g, Tag::scalar_function, Location::nodes, beta)};
}

namespace {

Field2D poisson_rhs(const Field2D& beta) {
    // h = -2 r d_r beta = 2 d_tau beta, mode by mode
    const NeckGrid& g = beta.grid;
    Field2D h(g, Tag::scalar_function, beta.loc);
    const int n = beta.npts();
    std::vector<Mat2> rows(std::size_t(g.M() * n), Mat2::Zero());
    for (int j = -g.N; j <= g.N; ++j)
        for (int i = 0; i < n; ++i) rows[std::size_t(i * g.M() + (j + g.N))] = beta.at(j, i);
    std::vector<Mat2> d = d_tau_rows(g, rows);
    for (int j = -g.N; j <= g.N; ++j)
        for (int i = 0; i < n; ++i) h.at(j, i) = 2.0 * d[std::size_t(i * g.M() + (j + g.N))];
    return h;
}

}  // namespace

Field2D gauge_to_model(const Field2D& beta, const WeightConfig& w, PoissonReport* report) {
    return solve_poisson_disk(poisson_rhs(beta), w, report);
}

double gauged_curvature_residual(const Field2D& beta, const Field2D& u) {
    Field2D h = poisson_rhs(beta);
    double worst = 0.0;
    for (int j = -h.grid.N; j <= h.grid.N; ++j) worst = std::max(worst, mode_residual(j, mode_of(u, j), mode_of(h, j)));
    return worst;
}

RadialPair cutoff_gauge(const RadialPair& S, const std::function<MJet(double)>& gamma, const CutoffProfile& cutoff) {
    return [=](double tau) {
        SJet chi = cutoff.tau_jet(tau);
        if (chi.v == 0.0 && chi.d == 0.0) return S(tau);
        return gauge_radial(S(tau), exp_traceless(chi * gamma(tau)));
    };
}

// ---------------------------------------------------------------------------------------------

struct ApproximatePair::SideData {
    SideInput in;
    double x0 = 0.0, dx = 0.0;
    std::vector<double> u_tab, v_tab;

    struct Stage {
        RadialSample s;
        MJet gp;
        SJet a, beta;
    };

    Stage stage(double tau) const {
        Stage st;
        st.s = in.exact(tau);
        const cd C = in.model.C;
        MJet P = -st.s.phi;  // dz/z coefficient
        SJet p0 = P.entry(0, 0) + SJet::constant(-C);
        SJet den = SJet::constant(2.0 * C) + p0;
        if (std::abs(den.v) < 0.1 * std::abs(C))
            throw NearSingularDenominator("|2C + phi0| < 0.1 |C| at tau = " + std::to_string(tau));
        SJet d0 = -(p0 / den), d1 = -(P.entry(0, 1) / den), d2 = -(P.entry(1, 0) / den);
        SJet one = SJet::constant(1.0);
        st.gp = pow(one + d0, -0.5) * from_entries(one, d1, -d2, one);
        RadialSample a1 = gauge_radial(st.s, st.gp);
        // A1_tau = i a sigma3, A1_vt = -2 i (alpha + beta) sigma3
        st.a = (-I) * a1.A_tau.entry(0, 0);
        st.beta = (0.5 * I) * a1.A_vt.entry(0, 0) + SJet::constant(-in.model.alpha);
        st.a.dd = st.beta.dd = std::numeric_limits<double>::quiet_NaN();
        return st;
    }

    double interp(const std::vector<double>& tab, double tau) const {
        double x = -tau;
        double f = (x - x0) / dx;
        int n = int(tab.size());
        int k = std::clamp(int(std::floor(f)) - 1, 0, n - 4);
        double t = f - k;
        double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0, l1 = t * (t - 2) * (t - 3) / 2.0,
               l2 = -t * (t - 1) * (t - 3) / 2.0, l3 = t * (t - 1) * (t - 2) / 6.0;
        const double* v = tab.data() + k;
        return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
    }

    void build_tables(const ApproxOptions& opt) {
        const int n = opt.table_nodes;
        RadialFunction h(opt.r_min, n), a(opt.r_min, n);
        for (int k = 0; k < n; ++k) {
            Stage st = stage(-h.x(k));
            h.values[std::size_t(k)] = 2.0 * st.beta.d.real();
            a.values[std::size_t(k)] = st.a.v.real();
        }
        // Entries below rounding of O(|C|) arithmetic are noise; a noisy prefix would spoil the tail fit.
        const double floor = 1e-13 * std::max(1.0, std::abs(in.model.C));
        for (int k = 0; k < n && std::abs(h.values[std::size_t(k)]) < floor; ++k) h.values[std::size_t(k)] = 0.0;
        for (int k = 0; k < n && std::abs(a.values[std::size_t(k)]) < floor; ++k) a.values[std::size_t(k)] = 0.0;
        x0 = h.x0();
        dx = h.dx();
        RadialFunction u = solve_mode_zero(h);
        RadialFunction v = mode_zero_derivative(a);
        u_tab.resize(std::size_t(n));
        v_tab.resize(std::size_t(n));
        for (int k = 0; k < n; ++k) {
            u_tab[std::size_t(k)] = u.values[std::size_t(k)].real();
            v_tab[std::size_t(k)] = -v.values[std::size_t(k)].real();
        }
    }

    MJet generator_from(const Stage& st, double tau) const {
        SJet v{interp(v_tab, tau), -st.a.v, -st.a.d};
        SJet u{interp(u_tab, tau), -2.0 * st.beta.v, -2.0 * st.beta.d};
        MJet k = from_entries(exp(I * v), SJet{}, SJet{}, exp((-I) * v));
        MJet e = from_entries(exp(u), SJet{}, SJet{}, exp(-u));
        return log_sl2(st.gp * k * e);
    }

    MJet generator(double tau) const { return generator_from(stage(tau), tau); }

    RadialSample app(double tau, const CutoffProfile& cut) const {
        SJet chi = cut.tau_jet(tau);
        if (chi.v == 0.0 && chi.d == 0.0) return in.exact(tau);
        Stage st = stage(tau);
        MJet gamma = generator_from(st, tau);
        return gauge_radial(st.s, exp_traceless(chi * gamma));
    }
};

ApproximatePair::ApproximatePair(const SideInput& plus, const SideInput& minus, const PlumbingConfig& cfg,
                                 const WeightConfig&, const ApproxOptions& opt)
    : cfg_(cfg), cutoff_(cfg.R), radial_fix_(opt.radial_fix) {
    cfg_.validate();
    if (std::abs(minus.model.alpha + plus.model.alpha) > 1e-12 || std::abs(minus.model.C + plus.model.C) > 1e-12)
        throw MatchingViolation("matching needs alpha_- = -alpha_+ and C_- = -C_+");
    if (-std::log(opt.r_min) < cfg_.tau_seam()) throw InvalidArgument("ApproxOptions: r_min must lie inside the seam");
    auto make = [&](const SideInput& s) {
        auto d = std::make_shared<SideData>();
        d->in = s;
        d->build_tables(opt);
        return std::shared_ptr<const SideData>(d);
    };
    plus_ = make(plus);
    minus_ = make(minus);

    if (radial_fix_) {
        // k' = -A_tau k from k = 1 at the seam outward, RK4 on a fine table.
        const int half = 4000;
        const double ts = cfg_.tau_seam();
        fix_h_ = ts / half;
        fix_tau0_ = 0.0;
        const int n = 2 * half + 1;
        fix_k_.assign(std::size_t(n), Mat2::Identity());
        fix_dk_.assign(std::size_t(n), Mat2::Zero());
        auto Atau = [&](double t) { return unfixed(t).A_tau.v; };
        auto rhs = [&](double t, const Mat2& k) -> Mat2 { return -Atau(t) * k; };
        for (int dir : {-1, 1}) {
            Mat2 k = Mat2::Identity();
            double hs = dir * fix_h_;
            for (int s = 0; s < half; ++s) {
                int i = half + dir * s;
                double t = i * fix_h_;
                Mat2 k1 = rhs(t, k), k2 = rhs(t + 0.5 * hs, k + 0.5 * hs * k1), k3 = rhs(t + 0.5 * hs, k + 0.5 * hs * k2),
                     k4 = rhs(t + hs, k + hs * k3);
                k += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                fix_k_[std::size_t(i + dir)] = k;
            }
        }
        for (int i = 0; i < n; ++i) fix_dk_[std::size_t(i)] = rhs(i * fix_h_, fix_k_[std::size_t(i)]);
    }
}

Mat2 ApproximatePair::fix_k(double tau) const {
    const int n = int(fix_k_.size());
    double f = (tau - fix_tau0_) / fix_h_;
    int i = std::clamp(int(std::floor(f)), 0, n - 2);
    double t = f - i;
    double h00 = 2 * t * t * t - 3 * t * t + 1, h10 = t * t * t - 2 * t * t + t, h01 = -2 * t * t * t + 3 * t * t,
           h11 = t * t * t - t * t;
    return h00 * fix_k_[std::size_t(i)] + h10 * fix_h_ * fix_dk_[std::size_t(i)] + h01 * fix_k_[std::size_t(i + 1)] +
           h11 * fix_h_ * fix_dk_[std::size_t(i + 1)];
}

RadialSample ApproximatePair::unfixed(double tau_z) const {
    const double ts = cfg_.tau_seam();
    if (tau_z < -1e-12 || tau_z > 2.0 * ts + 1e-12) throw InvalidArgument("ApproximatePair: tau outside the plumbed neck");
    if (tau_z <= ts) return plus_->app(tau_z, cutoff_);
    return flip_side(minus_->app(2.0 * ts - tau_z, cutoff_));
}

RadialSample ApproximatePair::operator()(double tau_z) const {
    RadialSample s = unfixed(tau_z);
    if (!radial_fix_) return s;
    Mat2 k = fix_k(tau_z), ki = k.inverse();
    const Mat2 At = s.A_tau.v;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto conj = [&](const MJet& f) {
        MJet o;
        o.v = ki * f.v * k;
        o.d = ki * (f.d + comm(At, f.v)) * k;
        o.dd = Mat2::Constant(cd(nan, nan));
        return o;
    };
    RadialSample out;
    out.A_tau = MJet{};
    out.A_vt = conj(s.A_vt);
    out.phi = conj(s.phi);
    return out;
}

RadialPair ApproximatePair::as_radial() const {
    auto self = std::make_shared<ApproximatePair>(*this);
    return [self](double t) { return (*self)(t); };
}

MJet ApproximatePair::generator(Side s, double tau_s) const {
    return (s == Side::plus ? plus_ : minus_)->generator(tau_s);
}

bool ApproximatePair::in_annulus(double tau_z) const {
    const double lo = -std::log(cfg_.R), hi = lo + kLog43;
    const double tw = 2.0 * cfg_.tau_seam() - tau_z;
    return (tau_z >= lo && tau_z <= hi) || (tw >= lo && tw <= hi);
}

ApproximatePair build_approximate(const SideInput& plus, const SideInput& minus, const CutoffProfile& cutoff,
                                  const PlumbingConfig& cfg, const WeightConfig& w, const ApproxOptions& opt) {
    if (std::abs(cutoff.R - cfg.R) > 1e-15) throw InvalidArgument("build_approximate: cutoff R differs from the plumbing R");
    return ApproximatePair(plus, minus, cfg, w, opt);
}

ErrorReport hitchin_error(const ApproximatePair& app, int samples) {
    ErrorReport rep;
    const double L = app.tau_max();
    for (int k = 0; k < samples; ++k) {
        double t = L * k / (samples - 1);
        double e = radial_first_eq(app(t)).norm();
        if (e > rep.sup) {
            rep.sup = e;
            rep.tau_at_sup = t;
        }
        if (!app.in_annulus(t)) rep.sup_outside = std::max(rep.sup_outside, e);
    }
    return rep;
}

std::pair<SideInput, SideInput> wolf_fixture(double ell) {
    WolfFamilyParams p(ell);
    ModelParams mp = p.model_limit();
    ModelParams mm(-mp.alpha, -mp.C, Side::minus);
    return {SideInput{wolf_radial(p, true, false), mp}, SideInput{wolf_radial(p, true, true), mm}};
}

WeightConfig fixture_weights(double ell) {
    double dp = std::min(0.45, 0.9 * ell);
    return WeightConfig(ell, dp, 7.0 / 9.0 * dp);
}

NeckGrid plumbed_grid(const PlumbingConfig& cfg) {
    cfg.validate();
    return NeckGrid(0.0, 2.0 * cfg.tau_seam(), cfg.n_tau, cfg.n_theta_modes);
}

Background background_from_name(const std::string& s) {
    if (s == "model") return Background::model;
    if (s == "wolf") return Background::wolf;
    if (s == "approx") return Background::approx;
    throw InvalidArgument("unknown background '" + s + "' (expected model, wolf or approx)");
}

std::string background_name(Background b) {
    switch (b) {
        case Background::model: return "model";
        case Background::wolf: return "wolf";
        case Background::approx: return "approx";
    }
    return "unknown";
}

NeckPair make_background(Background b, double R, int n_tau, int n_modes, double cap_length, const ModelParams& model,
                         double ell) {
    PlumbingConfig cfg = PlumbingConfig::from_R(R, n_tau, n_modes, cap_length);
    switch (b) {
        case Background::model: return sample_model(model, neck_grid(cfg));
        case Background::wolf: return sample_radial(wolf_radial(WolfFamilyParams(ell), true), plumbed_grid(cfg));
        case Background::approx: {
            auto [plus, minus] = wolf_fixture(ell);
            ApproximatePair app(plus, minus, cfg, fixture_weights(ell));
            return sample_radial(app.as_radial(), plumbed_grid(cfg));
        }
    }
    throw InvalidArgument("unknown background");
}

}  // namespace hg
