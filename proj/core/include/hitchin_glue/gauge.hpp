#pragma once

// Normal form near the node and the cut-off approximate solution.

#include "hitchin_glue/geometry.hpp"
#include "hitchin_glue/model.hpp"
#include "hitchin_glue/neck.hpp"
#include "hitchin_glue/poisson.hpp"

#include <functional>
#include <memory>
#include <string>

namespace hg {

// chi_R(r) = psi(log(r/R) / log(3/4)) with psi the quintic smoothstep clamped to [0, 1]:
// 1 for r <= 3R/4, 0 for r >= R.
struct CutoffProfile {
    double R;

    explicit CutoffProfile(double R);
    double value(double r) const;
    double r_dr(double r) const;   // r d/dr chi
    double r_dr2(double r) const;  // (r d/dr)^2 chi
    // chi as a jet in tau = -log r.
    SJet tau_jet(double tau) const;
    // max over r of |r chi'| + |(r d_r)^2 chi|, sampled.
    double constant(int samples = 4000) const;
};

// Phi = [[C + phi0, phi1], [phi2, -C - phi0]] dz/z with scalar perturbations on a disk grid.
struct PerturbedInput {
    Field2D phi0, phi1, phi2;
    ModelParams base;
    bool det_exact = false;

    // max |2 C phi0 + phi0^2 + phi1 phi2| over nodes.
    double det_residual() const;
};

struct Diagonalization {
    Field2D gauge;  // scalar_section holding g_p at every node
    Field2D beta;   // scalar_function
};

// g_p = (1 + d0)^{-1/2} [[1, d1], [-d2, 1]] with d_j = -phi_j / (2C + phi0); beta is the sigma_3
// part of the dtheta coefficient of g_p^* A_mod minus alpha, divided by 2i.
// Throws NearSingularDenominator when |2C + phi0| < 0.1 |C| somewhere.
Diagonalization diagonalize_higgs(const PerturbedInput& in);

// Solves Delta_0 u = h with h = -2 r d_r beta (fourth-order differences in log r).
Field2D gauge_to_model(const Field2D& beta, const WeightConfig& w, PoissonReport* report = nullptr);
// max over modes of |Delta_0 u - h| / max |h|: the curvature left after gauging by exp(diag(u, -u)).
double gauged_curvature_residual(const Field2D& beta, const Field2D& u);

// exp(chi gamma)^* S for a tau-dependent generator gamma.
RadialPair cutoff_gauge(const RadialPair& S, const std::function<MJet(double)>& gamma, const CutoffProfile& cutoff);

struct ApproxOptions {
    bool radial_fix = true;    // remove A_tau by a unitary gauge integrated outward from the seam
    double r_min = 1e-6;       // inner radius of the radial quadrature tables
    int table_nodes = 4000;
};

// Exact inputs near the node on each side, in their own coordinate (tau_s = -log|z| or -log|w|).
struct SideInput {
    RadialPair exact;
    ModelParams model;
};

// Approximate pair on the plumbed neck, tau_z in [0, 2 tau_seam]. Samples carry the value and
// the first tau-derivative of every coefficient.
class ApproximatePair {
public:
    ApproximatePair(const SideInput& plus, const SideInput& minus, const PlumbingConfig& cfg, const WeightConfig& w,
                    const ApproxOptions& opt = {});

    RadialSample operator()(double tau_z) const;
    RadialPair as_radial() const;

    double R() const { return cfg_.R; }
    double tau_seam() const { return cfg_.tau_seam(); }
    double tau_max() const { return 2.0 * cfg_.tau_seam(); }
    const CutoffProfile& cutoff() const { return cutoff_; }
    const PlumbingConfig& config() const { return cfg_; }
    // Jet of the gauge generator gamma = log(g_p k exp(u sigma_3)) on one side, own coordinate.
    MJet generator(Side s, double tau_s) const;
    // True when tau_z lies in one of the cutoff annuli 3R/4 <= |z| <= R, |w| likewise.
    bool in_annulus(double tau_z) const;
    // The same without the final unitary fix.
    RadialSample unfixed(double tau_z) const;

    struct SideData;

private:
    PlumbingConfig cfg_;
    CutoffProfile cutoff_;
    std::shared_ptr<const SideData> plus_, minus_;
    bool radial_fix_;
    // Unitary fix k on a fine table: values and derivatives, Hermite interpolated.
    double fix_tau0_ = 0.0, fix_h_ = 0.0;
    std::vector<Mat2> fix_k_, fix_dk_;
    Mat2 fix_k(double tau_z) const;
};

ApproximatePair build_approximate(const SideInput& plus, const SideInput& minus, const CutoffProfile& cutoff,
                                  const PlumbingConfig& cfg, const WeightConfig& w, const ApproxOptions& opt = {});

struct ErrorReport {
    double sup = 0.0;          // sup of the first-equation residual
    double sup_outside = 0.0;  // sup outside the cutoff annuli
    double tau_at_sup = 0.0;
};
// Sup-norm of -i*(F + [Phi ^ Phi^*]) (Frobenius) over `samples` equispaced tau_z, from exact jets.
ErrorReport hitchin_error(const ApproximatePair& app, int samples = 4001);

// Wolf pair with exponent ell on both sides (minus side with -Phi), in the diagonal frame.
std::pair<SideInput, SideInput> wolf_fixture(double ell);
// Weights used with wolf_fixture: delta = ell, delta' = min(0.45, 0.9 ell), delta'' = (7/9) delta'.
WeightConfig fixture_weights(double ell);

// Grid on the plumbed annulus: tau_z in [0, 2 tau_seam].
NeckGrid plumbed_grid(const PlumbingConfig& cfg);

// Backgrounds for the spectral study.
enum class Background { model, wolf, approx };
Background background_from_name(const std::string& s);
std::string background_name(Background b);
NeckPair make_background(Background b, double R, int n_tau, int n_modes, double cap_length = 2.0,
                         const ModelParams& model = ModelParams(0.2, cd(1.0, 0.0)), double ell = 0.5);

}  // namespace hg
