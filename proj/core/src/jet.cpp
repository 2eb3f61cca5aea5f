#include "hitchin_glue/jet.hpp"

#include "hitchin_glue/errors.hpp"

#include <cmath>
#include <limits>

namespace hg {

SJet operator+(const SJet& a, const SJet& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
SJet operator-(const SJet& a, const SJet& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
SJet operator-(const SJet& a) { return {-a.v, -a.d, -a.dd}; }
SJet operator*(const SJet& a, const SJet& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
SJet operator*(cd c, const SJet& a) { return {c * a.v, c * a.d, c * a.dd}; }
SJet operator+(cd c, const SJet& a) { return {c + a.v, a.d, a.dd}; }

SJet chain(const SJet& a, cd f, cd f1, cd f2) { return {f, f1 * a.d, f2 * a.d * a.d + f1 * a.dd}; }

SJet operator/(const SJet& a, const SJet& b) {
    cd inv = 1.0 / b.v;
    SJet r = chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
    return a * r;
}

SJet exp(const SJet& a) {
    cd e = std::exp(a.v);
    return chain(a, e, e, e);
}

SJet log(const SJet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

SJet sqrt(const SJet& a) {
    cd s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

SJet pow(const SJet& a, double p) {
    cd f = std::pow(a.v, p);
    return chain(a, f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v));
}

SJet conj(const SJet& a) { return {std::conj(a.v), std::conj(a.d), std::conj(a.dd)}; }

SJet MJet::det() const { return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0); }

MJet operator+(const MJet& a, const MJet& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
MJet operator-(const MJet& a, const MJet& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
MJet operator-(const MJet& a) { return {-a.v, -a.d, -a.dd}; }
MJet operator*(const MJet& a, const MJet& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
MJet operator*(const SJet& s, const MJet& a) {
    return {s.v * a.v, s.d * a.v + s.v * a.d, s.dd * a.v + 2.0 * s.d * a.d + s.v * a.dd};
}
MJet operator*(cd c, const MJet& a) { return {c * a.v, c * a.d, c * a.dd}; }
MJet operator*(const MJet& a, cd c) { return c * a; }

MJet adjoint(const MJet& a) { return {a.v.adjoint(), a.d.adjoint(), a.dd.adjoint()}; }

MJet inverse(const MJet& a) {
    SJet one_over_det = SJet::constant(1.0) / a.det();
    MJet adjugate = from_entries(a.entry(1, 1), -a.entry(0, 1), -a.entry(1, 0), a.entry(0, 0));
    return one_over_det * adjugate;
}

MJet comm(const MJet& a, const MJet& b) { return a * b - b * a; }

MJet traceless(const MJet& a) {
    SJet h = 0.5 * a.trace();
    MJet id = MJet::constant(Mat2::Identity());
    return a - h * id;
}

MJet derivative(const MJet& a) {
    Mat2 nan = Mat2::Constant(cd(std::numeric_limits<double>::quiet_NaN(), 0.0));
    return {a.d, a.dd, nan};
}

MJet diag_pm(const SJet& s) { return from_entries(s, SJet{}, SJet{}, -s); }

MJet from_entries(const SJet& a, const SJet& b, const SJet& c, const SJet& d) {
    MJet m;
    m.v << a.v, b.v, c.v, d.v;
    m.d << a.d, b.d, c.d, d.d;
    m.dd << a.dd, b.dd, c.dd, d.dd;
    return m;
}

namespace {

// C(w) = cosh(sqrt w), S(w) = sinh(sqrt w)/sqrt w and their first two w-derivatives.
struct CoshSinhc {
    cd c, c1, c2, s, s1, s2;
};

CoshSinhc cosh_sinhc(cd w) {
    CoshSinhc r{};
    if (std::abs(w) < 1.0) {
        // C = sum w^k/(2k)!, S = sum w^k/(2k+1)!
        cd wp = 1.0;  // w^k
        double fc = 1.0, fs = 1.0;  // (2k)!, (2k+1)!
        cd wm1 = 0.0, wm2 = 0.0;  // w^(k-1), w^(k-2)
        for (int k = 0; k < 30; ++k) {
            if (k > 0) {
                fc *= double((2 * k - 1) * (2 * k));
                fs *= double((2 * k) * (2 * k + 1));
            }
            r.c += wp / fc;
            r.s += wp / fs;
            if (k >= 1) {
                r.c1 += double(k) * wm1 / fc;
                r.s1 += double(k) * wm1 / fs;
            }
            if (k >= 2) {
                r.c2 += double(k * (k - 1)) * wm2 / fc;
                r.s2 += double(k * (k - 1)) * wm2 / fs;
            }
            wm2 = wm1;
            wm1 = wp;
            wp *= w;
        }
        return r;
    }
    cd q = std::sqrt(w);
    r.c = std::cosh(q);
    r.s = std::sinh(q) / q;
    r.c1 = 0.5 * r.s;
    r.s1 = (r.c - r.s) / (2.0 * w);
    r.c2 = 0.5 * r.s1;
    r.s2 = (r.c1 - r.s1) / (2.0 * w) - r.s1 / w;
    return r;
}

}  // namespace

MJet exp_traceless(const MJet& x) {
    SJet w = -x.det();
    CoshSinhc f = cosh_sinhc(w.v);
    SJet c = chain(w, f.c, f.c1, f.c2);
    SJet s = chain(w, f.s, f.s1, f.s2);
    return c * MJet::constant(Mat2::Identity()) + s * x;
}

MJet log_sl2(const MJet& g) {
    SJet c = 0.5 * g.trace();
    cd mu = std::acosh(c.v);
    cd w0 = mu * mu;
    CoshSinhc f = cosh_sinhc(w0);
    if (std::abs(f.s) < 1e-12) throw InvalidArgument("log_sl2: matrix has eigenvalue -1");
    // d(w)/dc = 2/S(w), d2(w)/dc2 = -4 S'(w)/S(w)^3
    SJet w = chain(c, w0, 2.0 / f.s, -4.0 * f.s1 / (f.s * f.s * f.s));
    SJet s = chain(w, f.s, f.s1, f.s2);
    MJet x = g - c * MJet::constant(Mat2::Identity());
    return (SJet::constant(1.0) / s) * x;
}

}  // namespace hg
