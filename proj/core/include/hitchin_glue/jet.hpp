#pragma once

// Second-order jets in one real variable (the neck coordinate tau).
// A jet stores value, first and second derivative; arithmetic follows the
// Leibniz rule so radial fields can be pushed through gauge transformations
// with exact derivatives.

#include "hitchin_glue/algebra.hpp"

namespace hg {

struct SJet {
    cd v{0.0}, d{0.0}, dd{0.0};

    static SJet constant(cd c) { return {c, 0.0, 0.0}; }
    static SJet variable(double x) { return {x, 1.0, 0.0}; }
};

SJet operator+(const SJet& a, const SJet& b);
SJet operator-(const SJet& a, const SJet& b);
SJet operator-(const SJet& a);
SJet operator*(const SJet& a, const SJet& b);
SJet operator/(const SJet& a, const SJet& b);
SJet operator*(cd c, const SJet& a);
SJet operator+(cd c, const SJet& a);

// f(a) given f, f', f'' at a.v
SJet chain(const SJet& a, cd f, cd f1, cd f2);
SJet exp(const SJet& a);
SJet log(const SJet& a);
SJet sqrt(const SJet& a);
SJet pow(const SJet& a, double p);
SJet conj(const SJet& a);

struct MJet {
    Mat2 v = Mat2::Zero(), d = Mat2::Zero(), dd = Mat2::Zero();

    static MJet constant(const Mat2& m) { return {m, Mat2::Zero(), Mat2::Zero()}; }
    SJet entry(int i, int j) const { return {v(i, j), d(i, j), dd(i, j)}; }
    SJet trace() const { return {v.trace(), d.trace(), dd.trace()}; }
    SJet det() const;
};

MJet operator+(const MJet& a, const MJet& b);
MJet operator-(const MJet& a, const MJet& b);
MJet operator-(const MJet& a);
MJet operator*(const MJet& a, const MJet& b);
MJet operator*(const SJet& s, const MJet& a);
MJet operator*(cd c, const MJet& a);
MJet operator*(const MJet& a, cd c);

MJet adjoint(const MJet& a);
MJet inverse(const MJet& a);
MJet comm(const MJet& a, const MJet& b);
MJet traceless(const MJet& a);
// Shift the derivative order: the jet of a' (its second derivative is unknown and set to NaN).
MJet derivative(const MJet& a);

// s * sigma3-style diagonal jet diag(s, -s)
MJet diag_pm(const SJet& s);
// [[a,b],[c,d]] from scalar jets
MJet from_entries(const SJet& a, const SJet& b, const SJet& c, const SJet& d);

// exp of a trace-free jet and principal log of an SL(2,C) jet.
MJet exp_traceless(const MJet& x);
MJet log_sl2(const MJet& g);

}  // namespace hg
