#include "conflow/subspace3d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conflow::subspace {

namespace {

void require_inside_disk(const SubspaceState& s) {
    if (!(std::abs(s.p) < 1.0))
        throw std::domain_error("subspace state requires |p| < 1");
}

}  // namespace

double y_of(const SubspaceState& s) {
    require_inside_disk(s);
    const double rho = abs2(s.p);
    return rho / (1.0 - rho);
}

ModeSpectrum lift(const SubspaceState& s, std::size_t N) {
    require_inside_disk(s);
    ModeSpectrum out = ModeSpectrum::zero(N);
    Complex pn(1.0);
    for (std::size_t n = 0; n < N; ++n) {
        out[n] = (s.b + static_cast<double>(n) * s.a) * pn;
        pn *= s.p;
    }
    return out;
}

TailEstimate lift_tail(const SubspaceState& s, std::size_t N) {
    require_inside_disk(s);
    TailEstimate t{0.0, 0.0, 0.0};
    const double r = std::abs(s.p);
    const double ab = std::abs(s.a), bb = std::abs(s.b);
    double rn = std::pow(r, static_cast<double>(N));
    for (std::size_t n = N; n < N + 200000; ++n) {
        const double amp = (bb + ab * static_cast<double>(n)) * rn;
        const double w = static_cast<double>(n + 1);
        t.sup_amp = std::max(t.sup_amp, amp);
        t.q_tail += w * amp * amp;
        t.e_tail += w * w * amp * amp;
        if (amp * amp * w * w < 1e-320) break;
        rn *= r;
    }
    return t;
}

SubspaceDerivative subspace_rhs(const SubspaceState& s) {
    require_inside_disk(s);
    const double y = y_of(s);
    const double yp1 = 1.0 + y;
    const double f = yp1 * yp1;
    const double a2 = abs2(s.a), b2 = abs2(s.b);
    const Complex ba = std::conj(s.b) * s.a;   // conj(b) a
    const Complex ab = std::conj(s.a) * s.b;   // conj(a) b
    const Complex I(0.0, 1.0);

    const Complex ip = s.p * f * (2.0 * y * a2 + ba) / 6.0;
    const Complex ia = s.a * f *
        (5.0 * b2 + (18.0 * y * y + 4.0 * y) * a2 + (6.0 * y - 1.0) * ba +
         10.0 * y * ab) / 6.0;
    const Complex ib = f * (s.a * y + s.b) *
        (b2 + y * std::conj(ba) + 2.0 * y * ab + (4.0 * y * y + 2.0 * y) * a2);

    return SubspaceDerivative{-I * ib, -I * ia, -I * ip};
}

void subspace_rhs_flat(const CVec& y, CVec& dy) {
    const SubspaceDerivative d = subspace_rhs(SubspaceState{y[0], y[1], y[2]});
    dy.resize(3);
    dy[0] = d.db;
    dy[1] = d.da;
    dy[2] = d.dp;
}

CVec pack(const SubspaceState& s) { return CVec{s.b, s.a, s.p}; }
SubspaceState unpack(const CVec& y) { return SubspaceState{y[0], y[1], y[2]}; }

SubspaceCharges subspace_charges(const SubspaceState& s) {
    const double y = y_of(s);
    const double yp1 = 1.0 + y;
    const double f = yp1 * yp1;
    const double a2 = abs2(s.a), b2 = abs2(s.b);
    const double re_ba = (std::conj(s.b) * s.a).real();

    SubspaceCharges c{};
    c.Q = f * (b2 + 4.0 * y * re_ba + (6.0 * y * y + 2.0 * y) * a2);
    c.E = f * ((1.0 + 2.0 * y) * b2 + 4.0 * y * (3.0 * y + 2.0) * re_ba +
               4.0 * y * (6.0 * y * y + 6.0 * y + 1.0) * a2);
    c.S = a2 * y * yp1 * yp1 * yp1;
    c.H = c.Q * c.Q - 2.0 * c.S * c.S;
    return c;
}

EsqDecomposition esq_reconstruct(double Q, double E, double S, double y) {
    if (!(y > 0.0)) throw std::domain_error("esq_reconstruct: requires y > 0");
    const double yp13 = (1.0 + y) * (1.0 + y) * (1.0 + y);
    EsqDecomposition d{};
    d.b2 = (2.0 * Q - E + 3.0 * y * (Q + 2.0 * S)) / yp13;
    d.a2 = S / (y * yp13);
    d.re_ba = (E - Q - 2.0 * S - 2.0 * y * (Q + 6.0 * S)) / (4.0 * y * yp13);
    return d;
}

YOscillation y_oscillation(double Q, double E, double S, double y0,
                           int ydot0_sign) {
    const double denom = Q * Q + 12.0 * S * S;
    if (!(denom > 0.0))
        throw std::domain_error("y_oscillation: Q = S = 0 has no oscillation");
    const double pc = 1.0 - E * (Q + 2.0 * S) / denom;
    const double qc = (E - Q - 2.0 * S) * (E - Q - 2.0 * S) / (4.0 * denom);

    YOscillation osc{};
    osc.B = -0.5 * pc;
    osc.Omega = std::sqrt(denom) / 6.0;
    double disc = osc.B * osc.B - qc;
    const double scale = std::max(1.0, osc.B * osc.B);
    if (disc < -1e-12 * scale)
        throw std::domain_error("y_oscillation: charge triple not realizable");
    disc = std::max(disc, 0.0);
    osc.A = std::sqrt(disc);
    osc.y_minus = osc.B - osc.A;
    osc.y_plus = osc.B + osc.A;

    if (osc.A > 0.0) {
        double sn = std::clamp((y0 - osc.B) / osc.A, -1.0, 1.0);
        const double cs = static_cast<double>(ydot0_sign) *
                          std::sqrt(std::max(0.0, 1.0 - sn * sn));
        osc.psi = std::atan2(sn, cs);
    } else {
        osc.psi = 0.0;  // stationary
    }
    return osc;
}

YOscillation y_oscillation_for(const SubspaceState& s) {
    const SubspaceCharges c = subspace_charges(s);
    const double im_ba = (std::conj(s.b) * s.a).imag();
    const int sign = im_ba > 0.0 ? 1 : (im_ba < 0.0 ? -1 : 0);
    return y_oscillation(c.Q, c.E, c.S, y_of(s), sign);
}

double y_eval(const YOscillation& osc, double t) {
    return osc.B + osc.A * std::sin(osc.Omega * t + osc.psi);
}

std::vector<double> spectrum_series(const SubspaceState& s0, double t,
                                    std::size_t N) {
    const SubspaceCharges c = subspace_charges(s0);
    const YOscillation osc = y_oscillation_for(s0);
    const double y = y_eval(osc, t);
    const double yp1 = 1.0 + y;
    const double yp14 = yp1 * yp1 * yp1 * yp1;
    const double rho = y / yp1;

    // Regular combinations: |a|^2 rho and Re(conj(b) a) rho stay finite as
    // y -> 0 even though the raw ESQ factors diverge (two-mode limit).
    const double b2 = (2.0 * c.Q - c.E + 3.0 * y * (c.Q + 2.0 * c.S)) /
                      (yp1 * yp1 * yp1);
    const double a2rho = c.S / yp14;
    const double rbrho = (c.E - c.Q - 2.0 * c.S - 2.0 * y * (c.Q + 6.0 * c.S)) /
                         (4.0 * yp14);

    std::vector<double> e(N, 0.0);
    if (N == 0) return e;
    e[0] = b2;
    double rn = 1.0;  // rho^{n-1}
    for (std::size_t n = 1; n < N; ++n) {
        const double nn = static_cast<double>(n);
        e[n] = (b2 * rho + 2.0 * nn * rbrho + nn * nn * a2rho) * rn;
        rn *= rho;
    }
    return e;
}

}  // namespace conflow::subspace
