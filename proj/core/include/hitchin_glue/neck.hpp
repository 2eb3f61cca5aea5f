#pragma once

// Discrete pairs on a neck grid and the nonlinear maps built on them.
//
// Layout: A_tau, phi and every 0-form live on tau nodes; A_vt (the dvartheta component)
// lives on tau edges. Theta derivatives are pseudo-spectral. Node arrays are indexed
// i*M + m, edge arrays e*M + m. Sections gamma vanish on the two boundary node rows.

#include "hitchin_glue/geometry.hpp"
#include "hitchin_glue/model.hpp"

#include <vector>

namespace hg {

struct NeckPair {
    NeckGrid grid;
    std::vector<Mat2> A_tau;  // nodes
    std::vector<Mat2> A_vt;   // edges
    std::vector<Mat2> phi;    // nodes, coefficient of dzeta

    NeckPair() = default;
    explicit NeckPair(const NeckGrid& g);
};

NeckPair sample_radial(const RadialPair& f, const NeckGrid& g);
// Constant model pair (alpha, C) on the grid.
NeckPair sample_model(const ModelParams& p, const NeckGrid& g);

// Public coefficient fields: connection_dtau (nodes), connection_dtheta (edges), higgs_dz_over_z (nodes).
struct PairFields {
    Field2D A_dtau, A_dtheta, Phi_dz_over_z;
};
PairFields to_fields(const NeckPair& p);
NeckPair from_fields(const PairFields& f);

// Theta derivative (d/dvartheta = -d/dtheta) of a node or edge array.
std::vector<Mat2> d_vt(const NeckGrid& g, const std::vector<Mat2>& f);

// -i*(F_A + [Phi ^ Phi^*]) at nodes; boundary rows are zero.
std::vector<Mat2> first_eq(const NeckPair& p);
// dzbar-coefficient of dbar_A Phi at nodes; boundary rows are zero.
std::vector<Mat2> second_eq(const NeckPair& p);

double sup_norm(const std::vector<Mat2>& f);
// sqrt(sum |f|^2 h 2pi/M) over the given array.
double l2_norm(const NeckGrid& g, const std::vector<Mat2>& f);

// exp(gamma)^*(A, Phi) for hermitian trace-free gamma at nodes (zero on boundary rows).
NeckPair apply_gauge(const NeckPair& p, const std::vector<Mat2>& gamma);

// Linearization of first_eq at p: L gamma = -D_- Y - nabla_vt X - [A_tau, avg Y] + 2 M_phi gamma.
std::vector<Mat2> apply_linear(const NeckPair& p, const std::vector<Mat2>& gamma);

struct Remainders {
    std::vector<Mat2> R_tau;  // nodes
    std::vector<Mat2> R_vt;   // edges
    std::vector<Mat2> R_phi;  // nodes
};
// Pieces of exp(gamma)^*(A, Phi) beyond first order in gamma.
Remainders remainder_terms(const NeckPair& p, const std::vector<Mat2>& gamma);
// Quadratic tail Q(gamma) = first_eq(exp(gamma)^* p) - first_eq(p) - L gamma, by the five-term formula.
std::vector<Mat2> q_term(const NeckPair& p, const std::vector<Mat2>& gamma);

// Random hermitian trace-free section with values of size ~scale, zero on boundary rows.
std::vector<Mat2> random_section(const NeckGrid& g, double scale, unsigned long long seed);

// <a, b> = sum Re tr(a b^*) h 2pi/M over interior nodes.
double section_inner(const NeckGrid& g, const std::vector<Mat2>& a, const std::vector<Mat2>& b);
// |D_+ gamma + [A_tau, gamma]|^2-type energy: ||Y||^2_edges + ||X||^2 + 4||[phi, gamma]||^2.
double energy(const NeckPair& p, const std::vector<Mat2>& gamma);

}  // namespace hg
