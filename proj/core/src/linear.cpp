#include "hitchin_glue/linear.hpp"

#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hg {

namespace {

const cd I(0.0, 1.0);

int interior_count(const NeckGrid& g) { return g.n_tau - 2; }

// Complex coordinates (tr(sigma_a x)/2) of a trace-free matrix.
Eigen::Vector3cd sl2_coords(const Mat2& x) {
    const auto& B = isu2_basis();
    Eigen::Vector3cd c;
    for (int a = 0; a < 3; ++a) c(a) = 0.5 * (B[std::size_t(a)] * x).trace();
    return c;
}

}  // namespace

Eigen::VectorXd section_to_vector(const NeckGrid& g, const std::vector<Mat2>& gamma) {
    const int M = g.M(), ni = interior_count(g);
    Eigen::VectorXd v(3 * M * ni);
    for (int i = 1; i <= ni; ++i)
        for (int m = 0; m < M; ++m) v.segment(((i - 1) * M + m) * 3, 3) = isu2_coords(gamma[std::size_t(i * M + m)]);
    return v;
}

std::vector<Mat2> vector_to_section(const NeckGrid& g, const Eigen::VectorXd& v) {
    const int M = g.M(), ni = interior_count(g);
    if (v.size() != 3 * M * ni) throw InvalidArgument("vector_to_section: size mismatch");
    std::vector<Mat2> out(std::size_t(M * g.n_tau), Mat2::Zero());
    for (int i = 1; i <= ni; ++i)
        for (int m = 0; m < M; ++m)
            out[std::size_t(i * M + m)] = from_isu2_coords(v.segment(((i - 1) * M + m) * 3, 3));
    return out;
}

namespace {

// Column probing: unknowns whose tau rows differ by 3 never feed the same output row,
// so 9M applications of the matrix-free map recover every entry.
SpMat probe_L(const NeckPair& p) {
    const NeckGrid& g = p.grid;
    const int M = g.M(), n = g.n_tau, ni = interior_count(g);
    const int N = 3 * M * ni;
    const auto& B = isu2_basis();
    std::vector<Eigen::Triplet<double>> trip;
    for (int color = 0; color < 3; ++color)
        for (int m = 0; m < M; ++m)
            for (int b = 0; b < 3; ++b) {
                std::vector<Mat2> gamma(std::size_t(M * n), Mat2::Zero());
                bool any = false;
                for (int i = 1; i <= ni; ++i)
                    if ((i - 1) % 3 == color) {
                        gamma[std::size_t(i * M + m)] = B[std::size_t(b)];
                        any = true;
                    }
                if (!any) continue;
                std::vector<Mat2> out = apply_linear(p, gamma);
                for (int ip = 1; ip <= ni; ++ip) {
                    int src = -1;
                    for (int i = std::max(1, ip - 1); i <= std::min(ni, ip + 1); ++i)
                        if ((i - 1) % 3 == color) src = i;
                    if (src < 0) continue;
                    const int col = ((src - 1) * M + m) * 3 + b;
                    for (int mp = 0; mp < M; ++mp) {
                        Vec3 c = isu2_coords(out[std::size_t(ip * M + mp)]);
                        for (int bp = 0; bp < 3; ++bp)
                            if (c[bp] != 0.0) trip.emplace_back(((ip - 1) * M + mp) * 3 + bp, col, c[bp]);
                    }
                }
            }
    SpMat A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

}  // namespace

LinearOperatorHandle assemble_L(const NeckPair& p) {
    LinearOperatorHandle op;
    op.kind = OperatorKind::L_full;
    op.grid = p.grid;
    op.matrix = probe_L(p);
    return op;
}

LinearOperatorHandle assemble_L(const PairFields& f) { return assemble_L(from_fields(f)); }

LinearOperatorHandle assemble_delta_A(const NeckPair& p) {
    NeckPair q = p;
    for (Mat2& x : q.phi) x.setZero();
    LinearOperatorHandle op = assemble_L(q);
    op.kind = OperatorKind::Delta_A;
    return op;
}

std::vector<double> smallest_eigenvalues(const LinearOperatorHandle& op, int k, double tol, unsigned long long seed) {
    EigenResult r = smallest_eigenpairs(op.matrix, k, tol, seed);
    for (double& v : r.values) v *= op.sigma_scale;
    return r.values;
}

double smallest_eigenvalue(const LinearOperatorHandle& op, double tol, unsigned long long seed) {
    return smallest_eigenvalues(op, 1, tol, seed)[0];
}

double symmetry_defect(const SpMat& A) {
    SpMat D = A - SpMat(A.transpose());
    double dm = 0.0, am = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
        for (SpMat::InnerIterator it(D, k); it; ++it) dm = std::max(dm, std::abs(it.value()));
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) am = std::max(am, std::abs(it.value()));
    return am > 0.0 ? dm / am : 0.0;
}

std::vector<Mat2> apply_dirac(const NeckPair& p, const std::vector<Mat2>& psi1, const std::vector<Mat2>& psi2,
                              std::vector<Mat2>* out2) {
    const NeckGrid& g = p.grid;
    const int M = g.M(), ne = g.n_edges();
    const double h = g.h();
    if (psi1.size() != std::size_t(M * g.n_tau) || psi2.size() != psi1.size())
        throw InvalidArgument("apply_dirac: section size mismatch");
    std::vector<Mat2> b1(std::size_t(ne * M)), b2(std::size_t(ne * M));
    for (int e = 0; e < ne; ++e)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(e * M + m);
            b1[k] = 0.5 * (psi1[k] + psi1[k + std::size_t(M)]);
            b2[k] = 0.5 * (psi2[k] + psi2[k + std::size_t(M)]);
        }
    std::vector<Mat2> d1 = d_vt(g, b1), d2 = d_vt(g, b2);
    std::vector<Mat2> o1(std::size_t(ne * M)), o2(std::size_t(ne * M));
    for (int e = 0; e < ne; ++e)
        for (int m = 0; m < M; ++m) {
            std::size_t k = std::size_t(e * M + m), kn = k + std::size_t(M);
            Mat2 At = 0.5 * (p.A_tau[k] + p.A_tau[kn]);
            Mat2 ph = 0.5 * (p.phi[k] + p.phi[kn]);
            const Mat2& Av = p.A_vt[k];
            Mat2 t1 = (psi1[kn] - psi1[k]) / h + comm(At, b1[k]);
            Mat2 t2 = (psi2[kn] - psi2[k]) / h + comm(At, b2[k]);
            o1[k] = 0.5 * (t1 + I * (d1[k] + comm(Av, b1[k]))) + comm(ph.adjoint(), b2[k]);
            o2[k] = 0.5 * (t2 - I * (d2[k] + comm(Av, b2[k]))) + comm(ph, b1[k]);
        }
    if (out2) *out2 = std::move(o2);
    return o1;
}

LinearOperatorHandle assemble_dirac(const NeckPair& p) {
    const NeckGrid& g = p.grid;
    const int M = g.M(), n = g.n_tau, ni = interior_count(g), ne = g.n_edges();
    const int nin = 6 * M * ni, nout = 6 * M * ne;
    const auto& B = isu2_basis();
    using CSp = Eigen::SparseMatrix<cd>;
    std::vector<Eigen::Triplet<cd>> trip;
    for (int color = 0; color < 2; ++color)
        for (int m = 0; m < M; ++m)
            for (int c = 0; c < 6; ++c) {
                std::vector<Mat2> psi1(std::size_t(M * n), Mat2::Zero()), psi2 = psi1;
                for (int i = 1; i <= ni; ++i)
                    if (i % 2 == color) (c < 3 ? psi1 : psi2)[std::size_t(i * M + m)] = B[std::size_t(c % 3)];
                std::vector<Mat2> o2;
                std::vector<Mat2> o1 = apply_dirac(p, psi1, psi2, &o2);
                for (int e = 0; e < ne; ++e) {
                    int src = -1;
                    for (int i : {e, e + 1})
                        if (i >= 1 && i <= ni && i % 2 == color) src = i;
                    if (src < 0) continue;
                    const int col = ((src - 1) * M + m) * 6 + c;
                    for (int mp = 0; mp < M; ++mp) {
                        std::size_t k = std::size_t(e * M + mp);
                        Eigen::Vector3cd c1 = sl2_coords(o1[k]), c2 = sl2_coords(o2[k]);
                        for (int a = 0; a < 3; ++a) {
                            if (c1(a) != 0.0) trip.emplace_back((e * M + mp) * 6 + a, col, c1(a));
                            if (c2(a) != 0.0) trip.emplace_back((e * M + mp) * 6 + 3 + a, col, c2(a));
                        }
                    }
                }
            }
    CSp D(nout, nin);
    D.setFromTriplets(trip.begin(), trip.end());
    CSp H = CSp(D.adjoint()) * D;

    std::vector<Eigen::Triplet<double>> rt;
    for (int k = 0; k < H.outerSize(); ++k)
        for (CSp::InnerIterator it(H, k); it; ++it) {
            const int r = int(it.row()), c = int(it.col());
            const double re = it.value().real(), im = it.value().imag();
            rt.emplace_back(r, c, re);
            rt.emplace_back(r + nin, c + nin, re);
            if (im != 0.0) {
                rt.emplace_back(r, c + nin, -im);
                rt.emplace_back(r + nin, c, im);
            }
        }
    LinearOperatorHandle op;
    op.kind = OperatorKind::Dirac_L1L2;
    op.grid = g;
    op.matrix = SpMat(2 * nin, 2 * nin);
    op.matrix.setFromTriplets(rt.begin(), rt.end());
    // |dzetabar|^2 = 2 on the output side; node and edge cells have equal area.
    op.sigma_scale = 2.0;
    return op;
}

double smallest_singular_value(const LinearOperatorHandle& op, double tol, unsigned long long seed) {
    if (op.kind != OperatorKind::Dirac_L1L2) throw InvalidArgument("smallest_singular_value: expects a Dirac handle");
    return std::sqrt(std::max(0.0, smallest_eigenvalue(op, tol, seed)));
}

int dirac_mode_kernel(int j, const ModelParams& p, ModeSector sector) {
    if (std::abs(p.C) == 0.0) throw InvalidArgument("dirac_mode_kernel: the model needs C != 0");
    Mat2 beta, phi;
    beta << p.alpha, 0.0, 0.0, -p.alpha;
    phi << p.C, 0.0, 0.0, -p.C;
    const auto& B = isu2_basis();
    // Unknown c < 3: psi1 = sigma_c, else psi2 = sigma_{c-3}; rows likewise.
    Eigen::Matrix<cd, 6, 6> S;
    for (int c = 0; c < 6; ++c) {
        Mat2 psi1 = c < 3 ? B[std::size_t(c)] : Mat2::Zero();
        Mat2 psi2 = c < 3 ? Mat2::Zero() : B[std::size_t(c - 3)];
        Mat2 r1 = -0.5 * j * psi1 + comm(beta, psi1) - comm(phi.adjoint(), psi2);
        Mat2 r2 = 0.5 * j * psi2 - comm(beta, psi2) - comm(phi, psi1);
        S.col(c).head<3>() = sl2_coords(r1);
        S.col(c).tail<3>() = sl2_coords(r2);
    }
    std::vector<int> idx;
    for (int c = 0; c < 6; ++c) {
        bool diag = (c % 3) == 0;
        if (sector == ModeSector::full || (sector == ModeSector::diagonal) == diag) idx.push_back(c);
    }
    const int d = int(idx.size());
    Eigen::MatrixXcd sub(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) sub(a, b) = S(idx[std::size_t(a)], idx[std::size_t(b)]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return d;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > 1e-8 * smax) ++rank;
    return d - rank;
}

void validate_sweep(const std::vector<double>& Rs) {
    if (Rs.size() < 2) throw InsufficientSweep("a scaling study needs at least two values of R");
    for (double R : Rs)
        if (!(R > 0.0 && R < 1.0)) throw InvalidArgument("sweep values must satisfy 0 < R < 1");
}

SpectrumReport scaling_study(const std::vector<double>& Rs, const std::function<NeckPair(double)>& background,
                             const SpectrumOptions& opt) {
    validate_sweep(Rs);
    const std::size_t n = Rs.size();
    SpectrumReport rep;
    rep.R = Rs;
    rep.T.resize(n);
    rep.lambda1.resize(n);
    rep.lambda1_T2.resize(n);
    rep.M_R.resize(n);
    rep.lowest.resize(n);
    if (opt.with_dirac) {
        rep.sigma_min.resize(n);
        rep.sigma_min_T.resize(n);
    }
    parallel_for(int(n), [&](int k) {
        const std::size_t s = std::size_t(k);
        NeckPair p = background(Rs[s]);
        LinearOperatorHandle op = assemble_L(p);
        std::vector<double> ev = smallest_eigenvalues(op, std::max(1, opt.n_eigen), opt.tol, opt.seed);
        const double T = -std::log(Rs[s]);
        rep.T[s] = T;
        rep.lambda1[s] = ev[0];
        rep.lambda1_T2[s] = ev[0] * T * T;
        rep.M_R[s] = 1.0 / ev[0];
        rep.lowest[s] = ev;
        if (opt.with_dirac) {
            double sig = smallest_singular_value(assemble_dirac(p), opt.tol, opt.seed);
            rep.sigma_min[s] = sig;
            rep.sigma_min_T[s] = sig * T;
        }
    });
    auto [lo, hi] = std::minmax_element(rep.lambda1_T2.begin(), rep.lambda1_T2.end());
    rep.flatness = *hi / *lo;
    rep.flat_pass = rep.flatness <= 1.5;
    rep.small_eigenvalue_flag = *lo < 0.1 * *hi;
    auto [rlo, rhi] = std::minmax_element(Rs.begin(), Rs.end());
    rep.sweep_adequate = n >= 4 && *rhi / *rlo >= 100.0 * (1.0 - 1e-9);
    if (opt.with_dirac) {
        auto [slo, shi] = std::minmax_element(rep.sigma_min_T.begin(), rep.sigma_min_T.end());
        rep.sigma_flatness = *shi / *slo;
    }
    return rep;
}

}  // namespace hg
