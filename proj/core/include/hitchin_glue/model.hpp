#pragma once

// Model solutions, Wolf's exact family, and radial (theta-independent) pairs.
//
// Conventions. On the neck, tau = -log|z|, vartheta = -theta, zeta = tau + i vartheta = -log z.
// Internally a pair is A = A_tau dtau + A_vt dvartheta and Phi = phi dzeta. The public
// coefficients are A_dtheta = -A_vt and Phi_dz_over_z = -phi.

#include "hitchin_glue/geometry.hpp"
#include "hitchin_glue/jet.hpp"

#include <functional>

namespace hg {

enum class Side { plus, minus };

struct ModelParams {
    double alpha = 0.0;
    cd C{1.0, 0.0};
    Side side = Side::plus;

    ModelParams() = default;
    // Rejects C = 0.
    ModelParams(double a, cd c, Side s = Side::plus);
};

struct PairValue {
    Mat2 A_dtheta;
    Mat2 Phi_dz_over_z;
};

PairValue model_pair(const ModelParams& p, double tau, double theta);

// Sample of a theta-independent pair with tau-jets of every coefficient.
struct RadialSample {
    MJet A_tau, A_vt, phi;
};
using RadialPair = std::function<RadialSample(double tau)>;

RadialPair model_radial(const ModelParams& p);

// First equation -i*(F_A + [Phi^Phi^*]) = -i(A_vt' + [A_tau, A_vt]) - 2[phi, phi^*]; hermitian.
Mat2 radial_first_eq(const RadialSample& s);
// dzbar-coefficient of dbar_A Phi: (phi' + [A_tau + i A_vt, phi]) / 2.
Mat2 radial_second_eq(const RadialSample& s);

// Complex gauge action g^*(A, Phi) for a tau-dependent g in SL(2,C).
// Only value and first derivative of the result are valid (g carries two derivatives).
RadialSample gauge_radial(const RadialSample& s, const MJet& g);
// Pull back a w-side sample to the z coordinate: tau_z = c - tau_w flips every coefficient.
RadialSample flip_side(const RadialSample& s);

struct GluedModel {
    Field2D A_dtheta;
    Field2D Phi_dz_over_z;
    double seam_jump = 0.0;
};

// Model pair on the symmetric neck grid, plus side for tau < 0 and the minus side
// (converted from w to z) for tau > 0. Throws MatchingViolation unless alpha_- = -alpha_+ and C_- = -C_+ to 1e-12.
GluedModel glue_models(const ModelParams& plus, const ModelParams& minus, const NeckGrid& grid);

// Wolf's family. The perturbation size is s = amplitude * r^ell with amplitude^2 = B_ell at r = 1.
struct WolfFamilyParams {
    double ell = 0.5;
    double amplitude = -1.0;  // negative: use sqrt((1-ell)/(1+ell) e^{2 ell})

    explicit WolfFamilyParams(double l = 0.5, double amp = -1.0);
    double amp() const;
    double B(double r) const;
    double h(double r) const;
    // Model pair reached as r -> 0 in the diagonalizing frame: alpha = 0, C = ell/(4i).
    ModelParams model_limit() const;
};

// Unitary frame change (1/sqrt 2)[[1,1],[1,-1]] taking the Wolf Higgs field to a diagonal limit.
const Mat2& wolf_frame();

// Exact pair at zeta (|zeta| < 1, B < 1): A_dtheta and Phi_dz_over_z in the original frame.
PairValue wolf_pair(const WolfFamilyParams& p, cd zeta);
// Radial jets; diagonal_frame applies wolf_frame(); negate_higgs flips Phi (still exact).
RadialPair wolf_radial(const WolfFamilyParams& p, bool diagonal_frame, bool negate_higgs = false);

// Pointwise det of a higgs_dz_over_z field, as a scalar_function field.
Field2D det_higgs(const Field2D& phi);

}  // namespace hg
