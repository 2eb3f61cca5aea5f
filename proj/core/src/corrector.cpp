#include "hitchin_glue/corrector.hpp"

#include "hitchin_glue/errors.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hg {

namespace {

using LU = Eigen::SparseLU<SpMat>;

std::vector<Mat2> nabla_tau(const NeckGrid& g, const std::vector<Mat2>& f) {
    const int M = g.M(), n = g.n_tau;
    const double h = g.h();
    std::vector<Mat2> out(f.size());
    auto at = [&](int i, int m) -> const Mat2& { return f[std::size_t(i * M + m)]; };
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < n; ++i) {
            Mat2 d;
            if (i == 0)
                d = (-3.0 * at(0, m) + 4.0 * at(1, m) - at(2, m)) / (2.0 * h);
            else if (i == n - 1)
                d = (3.0 * at(n - 1, m) - 4.0 * at(n - 2, m) + at(n - 3, m)) / (2.0 * h);
            else
                d = (at(i + 1, m) - at(i - 1, m)) / (2.0 * h);
            out[std::size_t(i * M + m)] = d;
        }
    return out;
}

std::vector<Mat2> nabla_vt(const NeckGrid& g, const std::vector<Mat2>& f, const Mat2& B) {
    std::vector<Mat2> out = d_vt(g, f);
    for (std::size_t k = 0; k < f.size(); ++k) out[k] += comm(B, f[k]);
    return out;
}

double weighted_sq(const NeckGrid& g, const std::vector<double>& wt, const std::vector<Mat2>& f) {
    const int M = g.M();
    double s = 0.0;
    for (int i = 0; i < g.n_tau; ++i)
        for (int m = 0; m < M; ++m) s += wt[std::size_t(i)] * f[std::size_t(i * M + m)].squaredNorm();
    return s * 2.0 * M_PI / M;
}

std::vector<Mat2> diff(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    std::vector<Mat2> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
    return d;
}

std::vector<Mat2> scaled(const std::vector<Mat2>& a, double s) {
    std::vector<Mat2> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = s * a[k];
    return d;
}

}  // namespace

GraphNormConfig GraphNormConfig::from_model(const ModelParams& p, int order) {
    GraphNormConfig c;
    c.B_vt << cd(0.0, -2.0 * p.alpha), 0.0, 0.0, cd(0.0, 2.0 * p.alpha);
    c.order = order;
    return c;
}

double graph_norm(const NeckGrid& g, const std::vector<Mat2>& gamma, const GraphNormConfig& cfg) {
    if (cfg.order != 1 && cfg.order != 2) throw InvalidArgument("graph_norm: order must be 1 or 2");
    const std::vector<double> wt = g.quadrature_weights();
    std::vector<Mat2> dt = nabla_tau(g, gamma), dv = nabla_vt(g, gamma, cfg.B_vt);
    double s = weighted_sq(g, wt, gamma) + weighted_sq(g, wt, dt) + weighted_sq(g, wt, dv);
    if (cfg.order == 2) {
        s += weighted_sq(g, wt, nabla_tau(g, dt)) + weighted_sq(g, wt, nabla_vt(g, dt, cfg.B_vt)) +
             weighted_sq(g, wt, nabla_tau(g, dv)) + weighted_sq(g, wt, nabla_vt(g, dv, cfg.B_vt));
    }
    return std::sqrt(s);
}

GreenOperator::GreenOperator(const LinearOperatorHandle& op) : op_(op) {
    if (op.kind != OperatorKind::L_full && op.kind != OperatorKind::Delta_A)
        throw InvalidArgument("GreenOperator: needs an assembled L");
    auto lu = std::make_shared<LU>();
    lu->analyzePattern(op_.matrix);
    lu->factorize(op_.matrix);
    if (lu->info() != Eigen::Success) throw SingularOperator("LU factorization of L failed: " + lu->lastErrorMessage());
    lu_ = lu;
}

std::vector<Mat2> GreenOperator::apply(const std::vector<Mat2>& rhs) const {
    const LU& lu = *static_cast<const LU*>(lu_.get());
    Eigen::VectorXd b = section_to_vector(op_.grid, rhs);
    Eigen::VectorXd x = lu.solve(b);
    double bn = b.norm();
    if (bn > 0.0) {
        double rel = (op_.matrix * x - b).norm() / bn;
        if (!(rel <= 1e-9)) throw SingularOperator("L solve residual " + std::to_string(rel) + " exceeds 1e-9");
    }
    if (!x.allFinite()) throw SingularOperator("L solve produced non-finite values");
    return vector_to_section(op_.grid, x);
}

std::vector<Mat2> apply_G(const LinearOperatorHandle& op, const std::vector<Mat2>& rhs, const GraphNormConfig& norm,
                          GreenReport* report) {
    GreenOperator G(op);
    std::vector<Mat2> x = G.apply(rhs);
    if (report) {
        Eigen::VectorXd b = section_to_vector(op.grid, rhs), xv = section_to_vector(op.grid, x);
        report->relative_residual = b.norm() > 0.0 ? (op.matrix * xv - b).norm() / b.norm() : 0.0;
        double rn = l2_norm(op.grid, rhs);
        report->amplification = rn > 0.0 ? graph_norm(op.grid, x, norm) / rn : 0.0;
    }
    return x;
}

Field2D apply_G(const LinearOperatorHandle& op, const Field2D& rhs) {
    std::vector<Mat2> x = apply_G(op, rhs.synthesize());
    return Field2D::analyze(op.grid, Tag::scalar_section, Location::nodes, x);
}

double measure_green_constant(const GreenOperator& G, const NeckPair& p, const GraphNormConfig& norm, double T,
                              unsigned long long seed, int samples) {
    const NeckGrid& g = G.grid();
    double worst = 0.0;
    auto probe = [&](const std::vector<Mat2>& f) {
        double fn = l2_norm(g, f);
        if (fn > 0.0) worst = std::max(worst, graph_norm(g, G.apply(f), norm) / fn);
    };
    probe(first_eq(p));
    for (int s = 0; s < samples; ++s) probe(random_section(g, 1.0, seed + 1000 + s));
    return worst / (T * T);
}

double measure_lipschitz_constant(const NeckPair& p, const GraphNormConfig& norm, double r, unsigned long long seed,
                                  int samples) {
    const NeckGrid& g = p.grid;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<Mat2> a = random_section(g, 1.0, seed + 2 * s), b = random_section(g, 1.0, seed + 2 * s + 1);
        // place both in the ball of radius r, at different radii
        a = scaled(a, r / graph_norm(g, a, norm));
        b = scaled(b, 0.5 * r / graph_norm(g, b, norm));
        std::vector<Mat2> dq = diff(q_term(p, a), q_term(p, b));
        double dg = graph_norm(g, diff(a, b), norm);
        if (dg > 0.0) worst = std::max(worst, l2_norm(g, dq) / (r * dg));
    }
    return worst;
}

namespace {

std::string failure_message(const char* what, double R, const CorrectorState& st) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "fixed-point iteration %s (R = %g, %d iterations, residual %g, last ratio %g)", what,
                  R, st.iterations, st.residual_history.back(),
                  st.contraction_factors.empty() ? 0.0 : st.contraction_factors.back());
    return buf;
}

}  // namespace

CorrectorResult correct(const NeckPair& app, double R, const CorrectorOptions& opt) {
    if (!(R > 0.0 && R < 1.0)) throw InvalidArgument("correct: need 0 < R < 1");
    if (opt.max_iter < 1) throw InvalidArgument("correct: max_iter must be positive");
    const NeckGrid& g = app.grid;
    CorrectorResult out;
    CorrectorState& st = out.state;
    st.T = -std::log(R);

    const std::vector<Mat2> F0 = first_eq(app);
    out.residual_before = sup_norm(F0);
    st.gamma.assign(F0.size(), Mat2::Zero());
    st.residual_history.push_back(out.residual_before);

    if (out.residual_before <= opt.tol) {
        st.converged = true;
        st.in_ball = true;
        st.contracting = true;
        st.iterations = 1;
        out.pair = app;
        out.residual_after = out.residual_before;
        st.sigma_R = opt.C > 0.0 ? 1.0 / (opt.C * std::pow(st.T, 2.0 + opt.epsilon)) : 0.0;
        return out;
    }

    GreenOperator G(assemble_L(app));
    double C = opt.C;
    if (C <= 0.0) {
        st.C_G = measure_green_constant(G, app, opt.norm, st.T, opt.seed, 3);
        // Lipschitz constant of Q in a unit-scale ball; the bound is linear in the radius.
        st.C_Q = measure_lipschitz_constant(app, opt.norm, 1.0, opt.seed, opt.lipschitz_samples);
        C = std::max(st.C_G, st.C_Q);
    }
    st.sigma_R = 1.0 / (C * std::pow(st.T, 2.0 + opt.epsilon));

    st.in_ball = true;
    int bad = 0;
    for (int n = 0; n < opt.max_iter; ++n) {
        std::vector<Mat2> rhs = F0;
        if (n > 0) {
            std::vector<Mat2> Q = q_term(app, st.gamma);
            for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += Q[k];
        }
        std::vector<Mat2> next = scaled(G.apply(rhs), -1.0);
        double step = graph_norm(g, diff(next, st.gamma), opt.norm);
        st.gamma = std::move(next);
        st.iterations = n + 1;
        st.gamma_norm = graph_norm(g, st.gamma, opt.norm);
        if (st.gamma_norm > st.sigma_R) st.in_ball = false;
        if (!st.step_norms.empty() && st.step_norms.back() > 0.0) {
            double ratio = step / st.step_norms.back();
            st.contraction_factors.push_back(ratio);
            bad = ratio >= 1.0 ? bad + 1 : 0;
        }
        st.step_norms.push_back(step);
        double res = sup_norm(first_eq(apply_gauge(app, st.gamma)));
        st.residual_history.push_back(res);
        if (!std::isfinite(res) || bad >= 3)
            throw ContractionFailure(failure_message("does not contract", R, st));
        if (res <= opt.tol || step <= 1e-14 * std::max(1.0, st.gamma_norm)) {
            st.converged = res <= opt.tol;
            break;
        }
    }
    if (!st.converged && st.iterations == opt.max_iter)
        throw ContractionFailure(failure_message("did not reach the tolerance", R, st));
    st.contracting = !st.contraction_factors.empty() &&
                     std::all_of(st.contraction_factors.begin(), st.contraction_factors.end(),
                                 [](double r) { return r < 1.0; });
    out.pair = apply_gauge(app, st.gamma);
    out.residual_after = st.residual_history.back();
    return out;
}

}  // namespace hg
