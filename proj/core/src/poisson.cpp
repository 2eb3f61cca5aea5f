#include "hitchin_glue/poisson.hpp"

#include "hitchin_glue/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hg {

using std::numbers::pi;

WeightConfig::WeightConfig(double d, double dp, double ddp) : delta(d), delta_prime(dp), delta_dprime(ddp) {
    if (!(d > 0.0)) throw InvalidArgument("WeightConfig: need delta > 0");
    if (!(dp > 0.0 && dp < std::min(0.5, d))) throw InvalidArgument("WeightConfig: need 0 < delta' < min(1/2, delta)");
    if (!(ddp > 0.0 && ddp < dp)) throw InvalidArgument("WeightConfig: need 0 < delta'' < delta'");
}

RadialFunction::RadialFunction(double rmin, int n) : r_min(rmin), values(std::size_t(n), cd(0.0)) {
    if (!(rmin > 0.0 && rmin < 1.0)) throw InvalidArgument("RadialFunction: need 0 < r_min < 1");
    if (n < 8) throw InvalidArgument("RadialFunction: need at least 8 nodes");
}

RadialFunction RadialFunction::sample(const std::function<cd(double)>& f, double rmin, int n) {
    RadialFunction h(rmin, n);
    for (int k = 0; k < n; ++k) h.values[std::size_t(k)] = f(h.r(k));
    return h;
}

namespace {

struct GaussRule {
    std::vector<double> t, w;  // on [0, 1]
};

GaussRule gauss_legendre(int n) {
    GaussRule g;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.t.push_back(0.5 * (1.0 - x));
        g.w.push_back(1.0 / ((1.0 - x * x) * dp * dp));
    }
    return g;
}

const GaussRule& gauss16() {
    static const GaussRule g = gauss_legendre(16);
    return g;
}

// Cubic interpolation of h over [x_k, x_{k+1}] uses the nodes k + offset + s, s = 0..3.
int stencil_offset(int k, int n) {
    if (k == 0) return 0;
    if (k + 2 > n - 1) return -2;
    return -1;
}

double lagrange(int s, double t, int off) {
    double num = 1.0, den = 1.0;
    for (int q = 0; q < 4; ++q) {
        if (q == s) continue;
        num *= t - (off + q);
        den *= double(s - q);
    }
    return num / den;
}

// W[off][s] = int_0^1 kernel(t) L_s(t) dt for the three stencil positions.
using Weights = std::array<std::array<double, 4>, 3>;

Weights product_weights(const std::function<double(double)>& kernel) {
    Weights W{};
    const auto& g = gauss16();
    for (int o = 0; o < 3; ++o) {
        int off = o - 2;
        for (int s = 0; s < 4; ++s) {
            double acc = 0.0;
            for (std::size_t q = 0; q < g.t.size(); ++q) acc += g.w[q] * kernel(g.t[q]) * lagrange(s, g.t[q], off);
            W[std::size_t(o)][std::size_t(s)] = acc;
        }
    }
    return W;
}

cd apply_weights(const Weights& W, const std::vector<cd>& h, int k) {
    const int n = int(h.size());
    int off = stencil_offset(k, n);
    const auto& row = W[std::size_t(off + 2)];
    cd acc(0.0);
    for (int s = 0; s < 4; ++s) acc += row[std::size_t(s)] * h[std::size_t(k + off + s)];
    return acc;
}

// Exponent p of the power-law fit h ~ h_0 (r/r_min)^p over the first cell; nullopt-like NaN when h_0 = 0.
// Complex exponent of h ~ c r^p from the first two nodes, so oscillating tails r^{q + i a} are exact.
cd tail_exponent(const std::vector<cd>& v, double dx) {
    if (v[0] == 0.0) return cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    if (v[1] == 0.0) return cd(-std::numeric_limits<double>::infinity(), 0.0);
    return std::log(v[1] / v[0]) / dx;
}

struct ModeZeroSweep {
    std::vector<cd> I, Q;  // int h dx', int (x - x') h dx'
};

ModeZeroSweep sweep_mode_zero(const RadialFunction& h0) {
    const int n = h0.n();
    const double dx = h0.dx();
    static const Weights A = product_weights([](double) { return 1.0; });
    static const Weights B = product_weights([](double t) { return 1.0 - t; });
    ModeZeroSweep s;
    s.I.assign(std::size_t(n), cd(0.0));
    s.Q.assign(std::size_t(n), cd(0.0));
    cd p = tail_exponent(h0.values, dx);
    if (!std::isnan(p.real())) {
        if (!(p.real() > 1e-12))
            throw QuadratureDivergence("solve_mode_zero: h0 does not decay toward r = 0 (fitted exponent " +
                                       std::to_string(p.real()) + ")");
        s.I[0] = h0.values[0] / p;
        s.Q[0] = h0.values[0] / (p * p);
    }
    for (int k = 0; k + 1 < n; ++k) {
        cd a = dx * apply_weights(A, h0.values, k);
        cd b = dx * dx * apply_weights(B, h0.values, k);
        s.I[std::size_t(k + 1)] = s.I[std::size_t(k)] + a;
        s.Q[std::size_t(k + 1)] = s.Q[std::size_t(k)] + dx * s.I[std::size_t(k)] + b;
    }
    return s;
}

}  // namespace

RadialFunction solve_mode_zero(const RadialFunction& h0) {
    ModeZeroSweep s = sweep_mode_zero(h0);
    RadialFunction u = h0;
    for (int k = 0; k < h0.n(); ++k) u.values[std::size_t(k)] = -s.Q[std::size_t(k)];
    return u;
}

RadialFunction mode_zero_derivative(const RadialFunction& h0) {
    ModeZeroSweep s = sweep_mode_zero(h0);
    RadialFunction u = h0;
    for (int k = 0; k < h0.n(); ++k) u.values[std::size_t(k)] = -s.I[std::size_t(k)];
    return u;
}

RadialFunction solve_mode_j(int j, const RadialFunction& hj, const WeightConfig&) {
    if (j == 0) throw InvalidArgument("solve_mode_j: j = 0 needs the logarithmic kernel (solve_mode_zero)");
    const int n = hj.n();
    const double dx = hj.dx();
    const double a = std::abs(j);
    const double mu = a * dx;
    const double decay = std::exp(-mu);
    Weights F = product_weights([mu](double t) { return std::exp(-mu * (1.0 - t)); });
    Weights Bk = product_weights([mu](double t) { return std::exp(-mu * t); });

    std::vector<cd> P(std::size_t(n), cd(0.0)), Nn(std::size_t(n), cd(0.0));
    cd p = tail_exponent(hj.values, dx);
    if (!std::isnan(p.real())) {
        if (!(a + p.real() > 1e-12))
            throw QuadratureDivergence("solve_mode_j: h_j grows too fast toward r = 0 for mode " + std::to_string(j));
        P[0] = hj.values[0] / (a + p);
    }
    for (int k = 0; k + 1 < n; ++k)
        P[std::size_t(k + 1)] = decay * P[std::size_t(k)] + dx * apply_weights(F, hj.values, k);
    for (int k = n - 2; k >= 0; --k)
        Nn[std::size_t(k)] = decay * Nn[std::size_t(k + 1)] + dx * apply_weights(Bk, hj.values, k);

    RadialFunction u = hj;
    for (int k = 0; k < n; ++k) u.values[std::size_t(k)] = (P[std::size_t(k)] + Nn[std::size_t(k)]) / (2.0 * a);
    return u;
}

double mode_residual(int j, const RadialFunction& u, const RadialFunction& h) {
    static const double c[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    const int n = u.n();
    const double dx = u.dx();
    double worst = 0.0, scale = 0.0;
    for (int k = 3; k + 3 < n; ++k) {
        cd d2(0.0);
        for (int q = 0; q < 7; ++q) d2 += c[q] * u.values[std::size_t(k - 3 + q)];
        d2 /= dx * dx;
        cd res = -d2 + double(j) * double(j) * u.values[std::size_t(k)] - h.values[std::size_t(k)];
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, std::abs(h.values[std::size_t(k)]));
    }
    return scale > 0.0 ? worst / scale : worst;
}

namespace {

// 2 pi int |v|^2 e^{-2 w x} dx over the grid plus the fitted tail; +inf when the tail does not decay.
double weighted_square(const std::vector<double>& g_noweight, double x0, double dx, double w) {
    const int n = int(g_noweight.size());
    std::vector<double> g(g_noweight.size());
    for (int k = 0; k < n; ++k) g[std::size_t(k)] = g_noweight[std::size_t(k)] * std::exp(-2.0 * w * (x0 + k * dx));
    double acc = 0.0;
    for (int k = 0; k + 1 < n; ++k) acc += 0.5 * dx * (g[std::size_t(k)] + g[std::size_t(k + 1)]);
    if (g[0] > 0.0) {
        // Decay rate from a least-squares fit of log g over the inner half of the grid: local
        // differences are fooled by interfering powers.
        const int K = std::max(1, (n - 1) / 2);
        double q = std::numeric_limits<double>::infinity();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int k = 0; k <= K && g[std::size_t(k)] > 0.0; ++k, ++m) {
            double x = k * dx, y = std::log(g[std::size_t(k)]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        if (m == K + 1) q = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        if (!(q > 1e-9)) return std::numeric_limits<double>::infinity();
        acc += g[0] / q;
    }
    return 2.0 * pi * acc;
}

}  // namespace

double weighted_norm(const RadialFunction& u, double weight, Measure) {
    // Both measures reduce to 2 pi int |u|^2 r^{-2 weight} dx with x = log r.
    std::vector<double> g(std::size_t(u.n()));
    for (int k = 0; k < u.n(); ++k) g[std::size_t(k)] = std::norm(u.values[std::size_t(k)]);
    return std::sqrt(weighted_square(g, u.x0(), u.dx(), weight));
}

namespace {

void check_disk_grid(const NeckGrid& g) {
    if (std::abs(g.tau_min) > 1e-14) throw InvalidArgument("poisson: the grid must start at tau = 0 (r = 1)");
}

}  // namespace

RadialFunction mode_of(const Field2D& f, int j) {
    check_disk_grid(f.grid);
    const int n = f.npts();
    RadialFunction u(std::exp(-f.grid.tau_max), n);
    for (int i = 0; i < n; ++i) u.values[std::size_t(n - 1 - i)] = f.at(j, i)(0, 0);
    return u;
}

void set_mode(Field2D& f, int j, const RadialFunction& u) {
    const int n = f.npts();
    if (u.n() != n) throw InvalidArgument("set_mode: size mismatch");
    for (int i = 0; i < n; ++i) {
        f.at(j, i) = Mat2::Zero();
        f.at(j, i)(0, 0) = u.values[std::size_t(n - 1 - i)];
    }
}

double weighted_norm(const Field2D& u, double weight, Measure m) {
    check_disk_grid(u.grid);
    double total = 0.0;
    for (int j = -u.grid.N; j <= u.grid.N; ++j) {
        RadialFunction uj = mode_of(u, j);
        for (int k = 0; k < uj.n(); ++k) {
            // Frobenius norm of the full matrix coefficient.
            int i = uj.n() - 1 - k;
            uj.values[std::size_t(k)] = u.at(j, i).norm();
        }
        double nj = weighted_norm(uj, weight, m);
        total += nj * nj;
    }
    return std::sqrt(total);
}

namespace {

std::vector<cd> d_x(const std::vector<cd>& v, double dx) {
    const std::size_t n = v.size();
    std::vector<cd> d(n);
    for (std::size_t k = 2; k + 2 < n; ++k) d[k] = (v[k - 2] - 8.0 * v[k - 1] + 8.0 * v[k + 1] - v[k + 2]) / (12.0 * dx);
    auto one_sided = [&](std::size_t k, int s) {
        auto at = [&](int o) { return v[std::size_t(int(k) + s * o)]; };
        return double(s) * (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * dx);
    };
    d[0] = one_sided(0, 1);
    d[1] = one_sided(1, 1);
    d[n - 1] = one_sided(n - 1, -1);
    d[n - 2] = one_sided(n - 2, -1);
    return d;
}

double h2_square(const RadialFunction& u, int j, double weight) {
    std::vector<cd> d1 = d_x(u.values, u.dx());
    std::vector<cd> d2 = d_x(d1, u.dx());
    const double jj = double(j) * j;
    std::vector<double> g(u.values.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double a0 = std::norm(u.values[k]), a1 = std::norm(d1[k]), a2 = std::norm(d2[k]);
        g[k] = a0 * (1.0 + jj + jj * jj) + a1 * (1.0 + jj) + a2;
    }
    return weighted_square(g, u.x0(), u.dx(), weight);
}

}  // namespace

Field2D solve_poisson_disk(const Field2D& h, const WeightConfig& w, PoissonReport* report) {
    check_disk_grid(h.grid);
    Field2D u(h.grid, Tag::scalar_function, h.loc);
    PoissonReport rep;
    double h2 = 0.0, l2 = 0.0;
    for (int j = -h.grid.N; j <= h.grid.N; ++j) {
        RadialFunction hj = mode_of(h, j);
        RadialFunction uj = j == 0 ? solve_mode_zero(hj) : solve_mode_j(j, hj, w);
        set_mode(u, j, uj);
        double res = mode_residual(j, uj, hj);
        double nh = weighted_norm(hj, w.delta, Measure::r_inv_dr);
        double nu = weighted_norm(uj, w.delta_prime, Measure::r_inv_dr);
        rep.modes.push_back(j);
        rep.residual.push_back(res);
        rep.ratio.push_back(nh > 0.0 ? nu / nh : 0.0);
        rep.max_residual = std::max(rep.max_residual, res);
        h2 += h2_square(uj, j, w.delta_prime);
        l2 += nh * nh;
    }
    rep.h2_norm_u = std::sqrt(h2);
    rep.l2_norm_h = std::sqrt(l2);
    rep.constant = rep.l2_norm_h > 0.0 ? rep.h2_norm_u / rep.l2_norm_h : 0.0;
    if (report) *report = std::move(rep);
    return u;
}

}  // namespace hg
