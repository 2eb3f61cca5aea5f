#include "hitchin_glue/model.hpp"

#include "hitchin_glue/errors.hpp"

#include <cmath>

namespace hg {

namespace {
const cd I(0.0, 1.0);

Mat2 diag2(cd a) {
    Mat2 m;
    m << a, 0.0, 0.0, -a;
    return m;
}
}  // namespace

ModelParams::ModelParams(double a, cd c, Side s) : alpha(a), C(c), side(s) {
    if (std::abs(c) == 0.0) throw InvalidArgument("ModelParams: the model needs C != 0");
}

PairValue model_pair(const ModelParams& p, double, double) {
    return {diag2(2.0 * I * p.alpha), diag2(p.C)};
}

RadialPair model_radial(const ModelParams& p) {
    Mat2 avt = -diag2(2.0 * I * p.alpha);
    Mat2 phi = -diag2(p.C);
    return [avt, phi](double) {
        return RadialSample{MJet{}, MJet::constant(avt), MJet::constant(phi)};
    };
}

Mat2 radial_first_eq(const RadialSample& s) {
    Mat2 f = s.A_vt.d + comm(s.A_tau.v, s.A_vt.v);
    return -I * f - 2.0 * comm(s.phi.v, s.phi.v.adjoint());
}

Mat2 radial_second_eq(const RadialSample& s) {
    return 0.5 * (s.phi.d + comm(s.A_tau.v + I * s.A_vt.v, s.phi.v));
}

RadialSample gauge_radial(const RadialSample& s, const MJet& g) {
    MJet gi = inverse(g);
    MJet azb = 0.5 * (s.A_tau + I * s.A_vt);
    MJet azb_new = gi * azb * g + 0.5 * (gi * derivative(g));
    MJet az_new = -adjoint(azb_new);
    RadialSample out;
    out.A_tau = az_new + azb_new;
    out.A_vt = I * (az_new - azb_new);
    out.phi = gi * s.phi * g;
    return out;
}

RadialSample flip_side(const RadialSample& s) {
    auto flip = [](const MJet& a) { return MJet{-a.v, a.d, -a.dd}; };
    return {flip(s.A_tau), flip(s.A_vt), flip(s.phi)};
}

GluedModel glue_models(const ModelParams& plus, const ModelParams& minus, const NeckGrid& grid) {
    if (std::abs(minus.alpha + plus.alpha) > 1e-12 || std::abs(minus.C + plus.C) > 1e-12)
        throw MatchingViolation("matching needs alpha_- = -alpha_+ and C_- = -C_+");
    GluedModel g{Field2D(grid, Tag::connection_dtheta), Field2D(grid, Tag::higgs_dz_over_z), 0.0};
    PairValue p = model_pair(plus, 0.0, 0.0);
    PairValue mw = model_pair(minus, 0.0, 0.0);
    // dtheta_w = -dtheta_z and dw/w = -dz/z
    PairValue m{-mw.A_dtheta, -mw.Phi_dz_over_z};
    int last_plus = -1;
    for (int i = 0; i < grid.n_tau; ++i) {
        const PairValue& v = grid.tau(i) <= 0.0 ? p : m;
        if (grid.tau(i) <= 0.0) last_plus = i;
        g.A_dtheta.at(0, i) = v.A_dtheta;
        g.Phi_dz_over_z.at(0, i) = v.Phi_dz_over_z;
    }
    if (last_plus >= 0 && last_plus + 1 < grid.n_tau) {
        int i = last_plus;
        g.seam_jump = std::max((g.A_dtheta.at(0, i + 1) - g.A_dtheta.at(0, i)).norm(),
                               (g.Phi_dz_over_z.at(0, i + 1) - g.Phi_dz_over_z.at(0, i)).norm());
    }
    return g;
}

WolfFamilyParams::WolfFamilyParams(double l, double a) : ell(l), amplitude(a) {
    if (!(l > 0.0 && l < 1.0)) throw InvalidArgument("Wolf family needs 0 < ell < 1");
    if (a == 0.0 || a >= 1.0) throw InvalidArgument("Wolf amplitude must lie in (0, 1)");
}

double WolfFamilyParams::amp() const {
    if (amplitude > 0.0) return amplitude;
    return std::sqrt((1.0 - ell) / (1.0 + ell) * std::exp(2.0 * ell));
}

double WolfFamilyParams::B(double r) const {
    double s = amp() * std::pow(r, ell);
    return s * s;
}

double WolfFamilyParams::h(double r) const {
    double s = std::sqrt(B(r));
    return (2.0 / ell) * (1.0 - s) / (1.0 + s);
}

ModelParams WolfFamilyParams::model_limit() const { return ModelParams(0.0, ell / (4.0 * I), Side::plus); }

const Mat2& wolf_frame() {
    static const Mat2 U = [] {
        Mat2 u;
        u << 1.0, 1.0, 1.0, -1.0;
        return Mat2(u / std::sqrt(2.0));
    }();
    return U;
}

PairValue wolf_pair(const WolfFamilyParams& p, cd zeta) {
    double r = std::abs(zeta);
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("wolf_pair needs 0 < |zeta| < 1");
    double B = p.B(r);
    if (B >= 1.0) throw InvalidArgument("wolf_pair: B_ell >= 1 outside the domain of validity");
    double s = std::sqrt(B);
    double a = -(p.ell / 2.0) * s / (1.0 - B);
    double h = p.h(r);
    Mat2 phi;
    phi << 0.0, p.ell * p.ell / 4.0 * h, 1.0 / h, 0.0;
    return {diag2(2.0 * I * a), phi / (2.0 * I)};
}

RadialPair wolf_radial(const WolfFamilyParams& p, bool diagonal_frame, bool negate_higgs) {
    const double ell = p.ell, amp = p.amp();
    const Mat2 U = wolf_frame();
    return [=](double tau) {
        SJet t = SJet::variable(tau);
        SJet s = amp * exp(-ell * t);
        SJet one = SJet::constant(1.0);
        if (std::abs(s.v) >= 1.0) throw InvalidArgument("wolf_radial: B_ell >= 1 outside the domain of validity");
        SJet h = (2.0 / ell) * ((one - s) / (one + s));
        SJet a = -(ell / 2.0) * (s / (one - s * s));
        // A_vt = -A_dtheta = -2 i a sigma3 ; phi = -Phi_dz_over_z
        MJet avt = diag_pm((-2.0 * I) * a);
        SJet zero{};
        MJet phi = (-1.0 / (2.0 * I)) * from_entries(zero, (ell * ell / 4.0) * h, one / h, zero);
        if (negate_higgs) phi = -phi;
        if (diagonal_frame) {
            MJet u = MJet::constant(U);
            avt = u * avt * u;
            phi = u * phi * u;
        }
        return RadialSample{MJet{}, avt, phi};
    };
}

Field2D det_higgs(const Field2D& phi) {
    if (phi.tag != Tag::higgs_dz_over_z) throw InvalidArgument("det_higgs expects a higgs_dz_over_z field");
    std::vector<Mat2> nodal = phi.synthesize();
    for (Mat2& m : nodal) {
        cd d = m.determinant();
        m = Mat2::Zero();
        m(0, 0) = d;
    }
    return Field2D::analyze(phi.grid, Tag::scalar_function, phi.loc, nodal);
}

}  // namespace hg
