#pragma once

#include "hitchin_glue/algebra.hpp"
#include "hitchin_glue/geometry.hpp"

#include <functional>
#include <vector>

namespace hg {

// Weight exponents with 0 < delta'' < delta' < min(1/2, delta).
struct WeightConfig {
    double delta;
    double delta_prime;
    double delta_dprime;

    WeightConfig(double d, double dp, double ddp);
};

// One Fourier mode sampled at r_k = r_min * exp(k dx), k = 0..n-1, with r_{n-1} = 1.
struct RadialFunction {
    double r_min = 1e-6;
    std::vector<cd> values;

    RadialFunction() = default;
    RadialFunction(double rmin, int n);
    static RadialFunction sample(const std::function<cd(double)>& f, double rmin, int n);

    int n() const { return int(values.size()); }
    double x0() const { return std::log(r_min); }
    double dx() const { return -x0() / (n() - 1); }
    double x(int k) const { return x0() + k * dx(); }
    double r(int k) const { return std::exp(x(k)); }
};

// u0 = -log r int_0^r h ds/s + int_0^r h log s ds/s; the s -> 0 tail is a fitted power law.
RadialFunction solve_mode_zero(const RadialFunction& h0);
// r d/dr u0 = -int_0^r h0 ds/s.
RadialFunction mode_zero_derivative(const RadialFunction& h0);

// Explicit kernel K_|j| for (-(r d_r)^2 + j^2) u = h.
RadialFunction solve_mode_j(int j, const RadialFunction& hj, const WeightConfig& w);

// max |(-(r d_r)^2 + j^2) u - h| / max |h| over interior nodes, sixth-order differences.
double mode_residual(int j, const RadialFunction& u, const RadialFunction& h);

enum class Measure { r_dr, r_inv_dr };

// r_dr:     (2 pi int |r^{-w-1} u|^2 r dr)^{1/2}
// r_inv_dr: (2 pi int |r^{-w} u|^2 r^{-1} dr)^{1/2}
// Returns +inf when the integrand does not decay toward r = 0.
double weighted_norm(const RadialFunction& u, double weight, Measure m);
// Field on a neck grid with tau = -log r in [0, tau_max]; sums the Fourier modes.
double weighted_norm(const Field2D& u, double weight, Measure m);

struct PoissonReport {
    std::vector<int> modes;
    std::vector<double> residual;  // per mode, relative
    std::vector<double> ratio;     // ||u_j|| weight delta' / ||h_j|| weight delta
    double h2_norm_u = 0.0;        // H^2 with weight delta'
    double l2_norm_h = 0.0;        // L^2 with weight delta
    double constant = 0.0;
    double max_residual = 0.0;
};

// Conversions between neck-grid Fourier modes (tau = -log r, tau_min = 0) and radial functions.
RadialFunction mode_of(const Field2D& f, int j);
void set_mode(Field2D& f, int j, const RadialFunction& u);

// Solves Delta_0 u = h mode by mode on a grid with tau = -log r in [0, tau_max].
Field2D solve_poisson_disk(const Field2D& h, const WeightConfig& w, PoissonReport* report = nullptr);

}  // namespace hg
