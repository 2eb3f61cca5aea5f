#pragma once

#include "hitchin_glue/algebra.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace hg {

// Plumbing data of one node. The seam |z| = |w| = sqrt|t| sits at R/2, so |t| = R^2/4.
struct PlumbingConfig {
    cd t;
    double rho = 0.0;
    double R = 0.0;
    double T = 0.0;
    double cap_length = 2.0;
    int n_tau = 256;
    int n_theta_modes = 4;

    static PlumbingConfig from_R(double R, int n_tau, int n_theta_modes, double cap_length = 2.0);
    // Throws InvalidArgument with the violated invariant.
    void validate() const;
    double tau_seam() const { return std::log(2.0 / R); }
};

// Uniform tau nodes (boundary included) times 2N+1 equispaced theta nodes.
// Edges are tau midpoints; dtheta components of 1-forms live there.
struct NeckGrid {
    double tau_min = 0.0, tau_max = 1.0;
    int n_tau = 16;
    int N = 4;

    NeckGrid() = default;
    NeckGrid(double tmin, double tmax, int n, int modes);

    int M() const { return 2 * N + 1; }
    double h() const { return (tau_max - tau_min) / (n_tau - 1); }
    double tau(int i) const { return tau_min + i * h(); }
    double tau_edge(int i) const { return tau_min + (i + 0.5) * h(); }
    double theta(int m) const;
    int n_edges() const { return n_tau - 1; }
    double cell_weight() const;  // h * 2 pi / M
    // Trapezoid weights in tau; they sum to tau_max - tau_min.
    std::vector<double> quadrature_weights() const;
    bool same_as(const NeckGrid& o) const;
};

// Symmetric model-neck grid tau in [-(T+L), T+L].
NeckGrid neck_grid(const PlumbingConfig& cfg);

// scalar_function stores a complex scalar in entry (0,0).
enum class Tag { connection_dtheta, connection_dtau, higgs_dz_over_z, scalar_section, two_form_dr_dtheta, scalar_function };
enum class Location { nodes, edges };

std::string tag_name(Tag t);
Tag tag_from_name(const std::string& s);

// Matrix field stored per (theta mode, tau point) as Fourier coefficients in theta.
struct Field2D {
    NeckGrid grid;
    Tag tag = Tag::scalar_section;
    Location loc = Location::nodes;
    std::vector<Mat2> coef;  // index (j+N)*npts + i

    Field2D() = default;
    Field2D(const NeckGrid& g, Tag t, Location l = Location::nodes);

    int npts() const { return loc == Location::nodes ? grid.n_tau : grid.n_edges(); }
    double tau_at(int i) const { return loc == Location::nodes ? grid.tau(i) : grid.tau_edge(i); }
    Mat2& at(int j, int i) { return coef[std::size_t((j + grid.N) * npts() + i)]; }
    const Mat2& at(int j, int i) const { return coef[std::size_t((j + grid.N) * npts() + i)]; }

    // Nodal values, index i*M + m.
    std::vector<Mat2> synthesize() const;
    static Field2D analyze(const NeckGrid& g, Tag t, Location l, const std::vector<Mat2>& nodal);
};

// Nodal field helpers.
using NodalField = std::vector<Mat2>;

// Spectral d/dtheta on 2N+1 equispaced nodes (dense M x M).
Eigen::MatrixXd theta_derivative_matrix(int M);

std::pair<double, double> coord_z_to_cyl(cd z);
cd cyl_to_z(double tau, double theta);
cd glue_map(cd z, cd t);

// Multiply a dr^dtheta coefficient by r = e^{-tau}; the result is a scalar section.
Field2D hodge_star_2form(const Field2D& f);

// Second-order centered d/dtau with second-order one-sided ends.
std::vector<double> d_tau(const std::vector<double>& f, double h);

}  // namespace hg
