#include "hitchin_glue/geometry.hpp"

#include "hitchin_glue/errors.hpp"

#include <cmath>
#include <numbers>

namespace hg {

using std::numbers::pi;

PlumbingConfig PlumbingConfig::from_R(double R, int n_tau, int n_theta_modes, double cap_length) {
    PlumbingConfig c;
    c.R = R;
    c.T = -std::log(R);
    c.rho = R * R / 4.0;
    c.t = cd(c.rho, 0.0);
    c.cap_length = cap_length;
    c.n_tau = n_tau;
    c.n_theta_modes = n_theta_modes;
    c.validate();
    return c;
}

void PlumbingConfig::validate() const {
    if (!(R > 0.0 && R < 1.0)) throw InvalidArgument("PlumbingConfig: need 0 < R < 1");
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("PlumbingConfig: need 0 < rho < 1");
    if (std::abs(std::abs(t) - rho) > 1e-12) throw InvalidArgument("PlumbingConfig: rho must equal |t|");
    if (!(R > 2.0 * rho)) throw InvalidArgument("PlumbingConfig: need R > 2 rho");
    if (std::abs(T + std::log(R)) > 1e-12) throw InvalidArgument("PlumbingConfig: T must equal -log R");
    if (cap_length < 0.0) throw InvalidArgument("PlumbingConfig: cap_length must be >= 0");
    if (n_tau < 16) throw InvalidArgument("PlumbingConfig: n_tau must be >= 16");
    if (n_theta_modes < 4) throw InvalidArgument("PlumbingConfig: n_theta_modes must be >= 4");
}

NeckGrid::NeckGrid(double tmin, double tmax, int n, int modes) : tau_min(tmin), tau_max(tmax), n_tau(n), N(modes) {
    if (!(tmax > tmin)) throw InvalidArgument("NeckGrid: empty tau interval");
    if (n < 3) throw InvalidArgument("NeckGrid: need at least 3 tau nodes");
    if (modes < 0) throw InvalidArgument("NeckGrid: negative mode count");
}

double NeckGrid::theta(int m) const { return 2.0 * pi * m / M(); }

double NeckGrid::cell_weight() const { return h() * 2.0 * pi / M(); }

std::vector<double> NeckGrid::quadrature_weights() const {
    std::vector<double> w(std::size_t(n_tau), h());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

bool NeckGrid::same_as(const NeckGrid& o) const {
    return n_tau == o.n_tau && N == o.N && tau_min == o.tau_min && tau_max == o.tau_max;
}

NeckGrid neck_grid(const PlumbingConfig& cfg) {
    cfg.validate();
    double H = cfg.T + cfg.cap_length;
    return NeckGrid(-H, H, cfg.n_tau, cfg.n_theta_modes);
}

std::string tag_name(Tag t) {
    switch (t) {
        case Tag::connection_dtheta: return "connection_dtheta";
        case Tag::connection_dtau: return "connection_dtau";
        case Tag::higgs_dz_over_z: return "higgs_dz_over_z";
        case Tag::scalar_section: return "scalar_section";
        case Tag::two_form_dr_dtheta: return "two_form_dr_dtheta";
        case Tag::scalar_function: return "scalar_function";
    }
    return "unknown";
}

Tag tag_from_name(const std::string& s) {
    for (Tag t : {Tag::connection_dtheta, Tag::connection_dtau, Tag::higgs_dz_over_z, Tag::scalar_section,
                  Tag::two_form_dr_dtheta, Tag::scalar_function})
        if (tag_name(t) == s) return t;
    throw InvalidArgument("unknown component tag '" + s + "'");
}

Field2D::Field2D(const NeckGrid& g, Tag t, Location l) : grid(g), tag(t), loc(l) {
    coef.assign(std::size_t(g.M() * npts()), Mat2::Zero());
}

std::vector<Mat2> Field2D::synthesize() const {
    const int M = grid.M(), N = grid.N, n = npts();
    std::vector<Mat2> out(std::size_t(n * M), Mat2::Zero());
    for (int m = 0; m < M; ++m) {
        double th = grid.theta(m);
        for (int j = -N; j <= N; ++j) {
            cd e = std::polar(1.0, j * th);
            for (int i = 0; i < n; ++i) out[std::size_t(i * M + m)] += e * at(j, i);
        }
    }
    return out;
}

Field2D Field2D::analyze(const NeckGrid& g, Tag t, Location l, const std::vector<Mat2>& nodal) {
    Field2D f(g, t, l);
    const int M = g.M(), N = g.N, n = f.npts();
    if (nodal.size() != std::size_t(n * M)) throw InvalidArgument("Field2D::analyze: size mismatch");
    for (int j = -N; j <= N; ++j)
        for (int m = 0; m < M; ++m) {
            cd e = std::polar(1.0 / M, -j * g.theta(m));
            for (int i = 0; i < n; ++i) f.at(j, i) += e * nodal[std::size_t(i * M + m)];
        }
    return f;
}

Eigen::MatrixXd theta_derivative_matrix(int M) {
    if (M % 2 == 0) throw InvalidArgument("theta_derivative_matrix: node count must be odd");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
    const double hth = 2.0 * pi / M;
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) {
            if (a == b) continue;
            int k = a - b;
            double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            D(a, b) = 0.5 * sgn / std::sin(k * hth / 2.0);
        }
    return D;
}

std::pair<double, double> coord_z_to_cyl(cd z) {
    if (z == cd(0.0)) throw InvalidArgument("coord_z_to_cyl: z = 0 is the node");
    if (std::abs(z) > 1.0 + 1e-12) throw InvalidArgument("coord_z_to_cyl: need |z| <= 1");
    return {-std::log(std::abs(z)), -std::arg(z)};
}

cd cyl_to_z(double tau, double theta) { return std::polar(std::exp(-tau), -theta); }

cd glue_map(cd z, cd t) {
    if (z == cd(0.0)) throw InvalidArgument("glue_map: z = 0 is the node");
    double az = std::abs(z);
    if (az < std::abs(t) * (1.0 - 1e-12) || az > 1.0 + 1e-12)
        throw InvalidArgument("glue_map: need |t| <= |z| <= 1");
    return t / z;
}

Field2D hodge_star_2form(const Field2D& f) {
    if (f.tag != Tag::two_form_dr_dtheta) throw InvalidArgument("hodge_star_2form: expected a dr^dtheta coefficient");
    Field2D out = f;
    out.tag = Tag::scalar_section;
    for (int j = -f.grid.N; j <= f.grid.N; ++j)
        for (int i = 0; i < f.npts(); ++i) out.at(j, i) *= std::exp(-f.tau_at(i));
    return out;
}

std::vector<double> d_tau(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw InvalidArgument("d_tau: need at least 3 samples");
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

}  // namespace hg
