#include "hitchin_glue/neck.hpp"

#include "hitchin_glue/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hg {

namespace {

const cd I(0.0, 1.0);

void check_sizes(const NeckPair& p) {
    const std::size_t M = std::size_t(p.grid.M());
    if (p.A_tau.size() != M * std::size_t(p.grid.n_tau) || p.phi.size() != M * std::size_t(p.grid.n_tau) ||
        p.A_vt.size() != M * std::size_t(p.grid.n_edges()))
        throw InvalidArgument("NeckPair: array sizes do not match the grid");
}

void check_section(const NeckGrid& g, const std::vector<Mat2>& gamma) {
    if (gamma.size() != std::size_t(g.M() * g.n_tau)) throw InvalidArgument("section size does not match the grid");
}

// Edge average of a node array and node average (interior rows) of an edge array.
Mat2 node_avg(const std::vector<Mat2>& e, int i, int m, int M) {
    return 0.5 * (e[std::size_t(i * M + m)] + e[std::size_t((i - 1) * M + m)]);
}
Mat2 edge_avg(const std::vector<Mat2>& n, int e, int m, int M) {
    return 0.5 * (n[std::size_t(e * M + m)] + n[std::size_t((e + 1) * M + m)]);
}

}  // namespace

NeckPair::NeckPair(const NeckGrid& g) : grid(g) {
    const std::size_t M = std::size_t(g.M());
    A_tau.assign(M * std::size_t(g.n_tau), Mat2::Zero());
    phi.assign(M * std::size_t(g.n_tau), Mat2::Zero());
    A_vt.assign(M * std::size_t(g.n_edges()), Mat2::Zero());
}

NeckPair sample_radial(const RadialPair& f, const NeckGrid& g) {
    NeckPair p(g);
    const int M = g.M();
    for (int i = 0; i < g.n_tau; ++i) {
        RadialSample s = f(g.tau(i));
        for (int m = 0; m < M; ++m) {
            p.A_tau[std::size_t(i * M + m)] = s.A_tau.v;
            p.phi[std::size_t(i * M + m)] = s.phi.v;
        }
    }
    for (int e = 0; e < g.n_edges(); ++e) {
        RadialSample s = f(g.tau_edge(e));
        for (int m = 0; m < M; ++m) p.A_vt[std::size_t(e * M + m)] = s.A_vt.v;
    }
    return p;
}

NeckPair sample_model(const ModelParams& p, const NeckGrid& g) { return sample_radial(model_radial(p), g); }

PairFields to_fields(const NeckPair& p) {
    check_sizes(p);
    std::vector<Mat2> adt(p.A_vt.size()), ph(p.phi.size());
    for (std::size_t k = 0; k < adt.size(); ++k) adt[k] = -p.A_vt[k];
    for (std::size_t k = 0; k < ph.size(); ++k) ph[k] = -p.phi[k];
    return {Field2D::analyze(p.grid, Tag::connection_dtau, Location::nodes, p.A_tau),
            Field2D::analyze(p.grid, Tag::connection_dtheta, Location::edges, adt),
            Field2D::analyze(p.grid, Tag::higgs_dz_over_z, Location::nodes, ph)};
}

NeckPair from_fields(const PairFields& f) {
    if (!f.A_dtau.grid.same_as(f.A_dtheta.grid) || !f.A_dtau.grid.same_as(f.Phi_dz_over_z.grid))
        throw InvalidArgument("from_fields: fields live on different grids");
    if (f.A_dtheta.loc != Location::edges || f.A_dtau.loc != Location::nodes || f.Phi_dz_over_z.loc != Location::nodes)
        throw InvalidArgument("from_fields: expected dtheta on edges, dtau and Higgs on nodes");
    NeckPair p(f.A_dtau.grid);
    p.A_tau = f.A_dtau.synthesize();
    std::vector<Mat2> adt = f.A_dtheta.synthesize(), ph = f.Phi_dz_over_z.synthesize();
    for (std::size_t k = 0; k < adt.size(); ++k) p.A_vt[k] = -adt[k];
    for (std::size_t k = 0; k < ph.size(); ++k) p.phi[k] = -ph[k];
    return p;
}

std::vector<Mat2> d_vt(const NeckGrid& g, const std::vector<Mat2>& f) {
    const int M = g.M();
    if (f.size() % std::size_t(M) != 0) throw InvalidArgument("d_vt: size is not a multiple of the theta count");
    static thread_local int cached_M = -1;
    static thread_local Eigen::MatrixXd D;
    if (cached_M != M) {
        D = theta_derivative_matrix(M);
        cached_M = M;
    }
    const int rows = int(f.size()) / M;
    std::vector<Mat2> out(f.size(), Mat2::Zero());
    for (int r = 0; r < rows; ++r)
        for (int a = 0; a < M; ++a) {
            Mat2 acc = Mat2::Zero();
            for (int b = 0; b < M; ++b)
                if (a != b) acc += D(a, b) * f[std::size_t(r * M + b)];
            out[std::size_t(r * M + a)] = -acc;
        }
    return out;
}

std::vector<Mat2> first_eq(const NeckPair& p) {
    check_sizes(p);
    const NeckGrid& g = p.grid;
    const int M = g.M();
    const double h = g.h();
    std::vector<Mat2> dA = d_vt(g, p.A_tau);
    std::vector<Mat2> out(p.A_tau.size(), Mat2::Zero());
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            Mat2 F = (p.A_vt[k] - p.A_vt[k - std::size_t(M)]) / h - dA[k] + comm(p.A_tau[k], node_avg(p.A_vt, i, m, M));
            out[k] = -I * F - 2.0 * comm(p.phi[k], p.phi[k].adjoint());
        }
    return out;
}

std::vector<Mat2> second_eq(const NeckPair& p) {
    check_sizes(p);
    const NeckGrid& g = p.grid;
    const int M = g.M();
    const double h = g.h();
    std::vector<Mat2> dphi = d_vt(g, p.phi);
    std::vector<Mat2> out(p.phi.size(), Mat2::Zero());
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            Mat2 dt = (p.phi[k + std::size_t(M)] - p.phi[k - std::size_t(M)]) / (2.0 * h);
            Mat2 conn = p.A_tau[k] + I * node_avg(p.A_vt, i, m, M);
            out[k] = 0.5 * (dt + I * dphi[k] + comm(conn, p.phi[k]));
        }
    return out;
}

double sup_norm(const std::vector<Mat2>& f) {
    double s = 0.0;
    for (const Mat2& a : f) s = std::max(s, a.norm());
    return s;
}

double l2_norm(const NeckGrid& g, const std::vector<Mat2>& f) {
    double s = 0.0;
    for (const Mat2& a : f) s += frob2(a);
    return std::sqrt(s * g.cell_weight());
}

NeckPair apply_gauge(const NeckPair& p, const std::vector<Mat2>& gamma) {
    check_sizes(p);
    const NeckGrid& g = p.grid;
    check_section(g, gamma);
    const int M = g.M(), n = g.n_tau;
    const double h = g.h();
    std::vector<Mat2> G(gamma.size()), Gi(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        G[k] = exp_traceless(gamma[k]);
        Gi[k] = exp_traceless(-gamma[k]);
    }
    NeckPair out = p;

    std::vector<Mat2> Abar(gamma.size(), Mat2::Zero());
    for (int i = 1; i + 1 < n; ++i)
        for (int m = 0; m < M; ++m) Abar[std::size_t(i * M + m)] = node_avg(p.A_vt, i, m, M);
    std::vector<Mat2> dG = d_vt(g, G);
    for (int i = 1; i + 1 < n; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            Mat2 Xt = (G[k + std::size_t(M)] - G[k - std::size_t(M)]) / (2.0 * h) + comm(p.A_tau[k], G[k]);
            Mat2 Xv = dG[k] + comm(Abar[k], G[k]);
            out.A_tau[k] = traceless(p.A_tau[k] + 0.5 * Gi[k] * (Xt + I * Xv) - 0.5 * (Xt - I * Xv) * Gi[k]);
            out.phi[k] = Gi[k] * p.phi[k] * G[k];
        }

    const int ne = g.n_edges();
    std::vector<Mat2> Ge(std::size_t(ne * M)), Gei(std::size_t(ne * M));
    for (int e = 0; e < ne; ++e)
        for (int m = 0; m < M; ++m) {
            Mat2 ga = edge_avg(gamma, e, m, M);
            Ge[std::size_t(e * M + m)] = exp_traceless(ga);
            Gei[std::size_t(e * M + m)] = exp_traceless(-ga);
        }
    std::vector<Mat2> dGe = d_vt(g, Ge);
    for (int e = 0; e < ne; ++e)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(e * M + m);
            Mat2 At = edge_avg(p.A_tau, e, m, M);
            Mat2 Yt = (G[k + std::size_t(M)] - G[k]) / h + comm(At, Ge[k]);
            Mat2 Yv = dGe[k] + comm(p.A_vt[k], Ge[k]);
            out.A_vt[k] = traceless(p.A_vt[k] - 0.5 * I * (Gei[k] * Yt + Yt * Gei[k]) + 0.5 * (Gei[k] * Yv - Yv * Gei[k]));
        }
    return out;
}

namespace {

// First-order variations: a1_tau = i X (nodes), a1_vt = -i Y (edges), b1 = [phi, gamma].
struct Linearized {
    std::vector<Mat2> X, Y, b1;
};

Linearized linearize(const NeckPair& p, const std::vector<Mat2>& gamma) {
    const NeckGrid& g = p.grid;
    const int M = g.M(), n = g.n_tau, ne = g.n_edges();
    const double h = g.h();
    Linearized L;
    L.X.assign(gamma.size(), Mat2::Zero());
    L.b1.assign(gamma.size(), Mat2::Zero());
    L.Y.assign(std::size_t(ne * M), Mat2::Zero());
    std::vector<Mat2> dg = d_vt(g, gamma);
    for (int i = 1; i + 1 < n; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            L.X[k] = dg[k] + comm(node_avg(p.A_vt, i, m, M), gamma[k]);
            L.b1[k] = comm(p.phi[k], gamma[k]);
        }
    for (int e = 0; e < ne; ++e)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(e * M + m);
            L.Y[k] = (gamma[k + std::size_t(M)] - gamma[k]) / h + comm(edge_avg(p.A_tau, e, m, M), edge_avg(gamma, e, m, M));
        }
    return L;
}

// -i d_A(a_tau, a_vt) at interior nodes: the part of first_eq linear in the connection variation.
std::vector<Mat2> d_A(const NeckPair& p, const std::vector<Mat2>& a_tau, const std::vector<Mat2>& a_vt) {
    const NeckGrid& g = p.grid;
    const int M = g.M();
    const double h = g.h();
    std::vector<Mat2> da = d_vt(g, a_tau);
    std::vector<Mat2> out(a_tau.size(), Mat2::Zero());
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            Mat2 F = (a_vt[k] - a_vt[k - std::size_t(M)]) / h - da[k] + comm(p.A_tau[k], node_avg(a_vt, i, m, M)) +
                     comm(a_tau[k], node_avg(p.A_vt, i, m, M));
            out[k] = -I * F;
        }
    return out;
}

// -2([b, phi^*] + [phi, b^*]): the part of first_eq linear in the Higgs variation.
Mat2 higgs_linear(const Mat2& phi, const Mat2& b) { return -2.0 * (comm(b, phi.adjoint()) + comm(phi, b.adjoint())); }

}  // namespace

std::vector<Mat2> apply_linear(const NeckPair& p, const std::vector<Mat2>& gamma) {
    check_sizes(p);
    check_section(p.grid, gamma);
    Linearized L = linearize(p, gamma);
    std::vector<Mat2> a_tau(L.X.size()), a_vt(L.Y.size());
    for (std::size_t k = 0; k < a_tau.size(); ++k) a_tau[k] = I * L.X[k];
    for (std::size_t k = 0; k < a_vt.size(); ++k) a_vt[k] = -I * L.Y[k];
    std::vector<Mat2> out = d_A(p, a_tau, a_vt);
    const int M = p.grid.M();
    for (int i = 1; i + 1 < p.grid.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            out[k] += higgs_linear(p.phi[k], L.b1[k]);
        }
    return out;
}

Remainders remainder_terms(const NeckPair& p, const std::vector<Mat2>& gamma) {
    check_sizes(p);
    check_section(p.grid, gamma);
    NeckPair q = apply_gauge(p, gamma);
    Linearized L = linearize(p, gamma);
    Remainders r;
    r.R_tau.resize(p.A_tau.size());
    r.R_phi.resize(p.phi.size());
    r.R_vt.resize(p.A_vt.size());
    for (std::size_t k = 0; k < p.A_tau.size(); ++k) {
        r.R_tau[k] = q.A_tau[k] - p.A_tau[k] - I * L.X[k];
        r.R_phi[k] = q.phi[k] - p.phi[k] - L.b1[k];
    }
    for (std::size_t k = 0; k < p.A_vt.size(); ++k) r.R_vt[k] = q.A_vt[k] - p.A_vt[k] + I * L.Y[k];
    return r;
}

std::vector<Mat2> q_term(const NeckPair& p, const std::vector<Mat2>& gamma) {
    check_sizes(p);
    check_section(p.grid, gamma);
    NeckPair q = apply_gauge(p, gamma);
    Linearized L = linearize(p, gamma);
    const NeckGrid& g = p.grid;
    const int M = g.M();

    std::vector<Mat2> a_tau(p.A_tau.size()), a_vt(p.A_vt.size()), R_tau(p.A_tau.size()), R_vt(p.A_vt.size());
    for (std::size_t k = 0; k < a_tau.size(); ++k) {
        a_tau[k] = q.A_tau[k] - p.A_tau[k];
        R_tau[k] = a_tau[k] - I * L.X[k];
    }
    for (std::size_t k = 0; k < a_vt.size(); ++k) {
        a_vt[k] = q.A_vt[k] - p.A_vt[k];
        R_vt[k] = a_vt[k] + I * L.Y[k];
    }

    // d_A R_A + [R_Phi ^ Phi^*] + [Phi ^ R_Phi^*] + 1/2 [a ^ a] + [b ^ b^*]
    std::vector<Mat2> out = d_A(p, R_tau, R_vt);
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            Mat2 b = q.phi[k] - p.phi[k];
            Mat2 R_phi = b - L.b1[k];
            out[k] += higgs_linear(p.phi[k], R_phi);
            out[k] += -I * comm(a_tau[k], node_avg(a_vt, i, m, M));
            out[k] += -2.0 * comm(b, b.adjoint());
        }
    return out;
}

std::vector<Mat2> random_section(const NeckGrid& g, double scale, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int M = g.M();
    std::vector<Mat2> out(std::size_t(M * g.n_tau), Mat2::Zero());
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            Vec3 c(nd(rng), nd(rng), nd(rng));
            out[std::size_t(i * M + m)] = scale * from_isu2_coords(c);
        }
    return out;
}

double section_inner(const NeckGrid& g, const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    const int M = g.M();
    double s = 0.0;
    for (int i = 1; i + 1 < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) s += inner(a[std::size_t(i * M + m)], b[std::size_t(i * M + m)]);
    return s * g.cell_weight();
}

double energy(const NeckPair& p, const std::vector<Mat2>& gamma) {
    check_sizes(p);
    check_section(p.grid, gamma);
    Linearized L = linearize(p, gamma);
    double e = 0.0;
    for (const Mat2& y : L.Y) e += frob2(y);
    const int M = p.grid.M();
    for (int i = 1; i + 1 < p.grid.n_tau; ++i)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(i * M + m);
            e += frob2(L.X[k]) + 4.0 * frob2(L.b1[k]);
        }
    return e * p.grid.cell_weight();
}

}  // namespace hg
