// The three-dimensional invariant subspace alpha_n = (b + a n) p^n of the
// conformal flow: reduced equations of motion, the extra conserved quantity
// S, closed-form y(t) = |p|^2/(1-|p|^2) oscillation, turning points, and the
// exact energy-spectrum series.
//
// The reduced equations were re-derived by matching polynomial-in-n
// coefficients of the lifted flow (the printed forms contain a corrupted
// macro); with y as above they read
//
//   i p' = p (1+y)^2 (2 y |a|^2 + conj(b) a) / 6
//   i a' = a (1+y)^2 (5|b|^2 + (18y^2+4y)|a|^2 + (6y-1) conj(b) a
//                      + 10 y conj(a) b) / 6
//   i b' = (1+y)^2 (a y + b) (|b|^2 + y a conj(b) + 2 y conj(a) b
//                              + (4y^2+2y)|a|^2)
//
// and are validated against the full flow through the lift-commutation tests.

#pragma once

#include <vector>

#include "conflow/types.hpp"

namespace conflow::subspace {

struct SubspaceState {
    Complex b, a, p;  // |p| < 1 strictly
};

struct SubspaceDerivative {
    Complex db, da, dp;
};

struct SubspaceCharges {
    double Q, E, S, H;  // H = Q^2 - 2 S^2 identically on the subspace
};

// y(t) = B + A sin(Omega t + psi); turning points y_-/y_+ bound the inverse
// and direct cascades, with (1+y_+)/(1+y_-) <= 16.
struct YOscillation {
    double B, A, Omega, psi;
    double y_minus, y_plus;
};

struct TailEstimate {
    double sup_amp;  // sup_{n>=N} |alpha_n|
    double q_tail;   // sum_{n>=N} (n+1)   |alpha_n|^2
    double e_tail;   // sum_{n>=N} (n+1)^2 |alpha_n|^2
};

struct EsqDecomposition {
    double b2, a2, re_ba;  // |b|^2, |a|^2, Re(conj(b) a) from (Q,E,S,y)
};

double y_of(const SubspaceState& s);

ModeSpectrum lift(const SubspaceState& s, std::size_t N);
TailEstimate lift_tail(const SubspaceState& s, std::size_t N);

SubspaceDerivative subspace_rhs(const SubspaceState& s);

// Flat adapter for the integrator: state = (b, a, p) as a 3-vector.
void subspace_rhs_flat(const CVec& y, CVec& dy);
CVec pack(const SubspaceState& s);
SubspaceState unpack(const CVec& y);

SubspaceCharges subspace_charges(const SubspaceState& s);

EsqDecomposition esq_reconstruct(double Q, double E, double S, double y);

// From conserved (Q,E,S) plus the initial point: amplitude/offset/frequency
// and the phase fixed by y0 and sign(ydot0).  Throws std::domain_error when
// the triple is not realizable; a discriminant >= -1e-12 (relative) is
// clamped to A = 0 (stationary).
YOscillation y_oscillation(double Q, double E, double S, double y0,
                           int ydot0_sign);
YOscillation y_oscillation_for(const SubspaceState& s);

double y_eval(const YOscillation& osc, double t);

// |alpha_n(t)|^2 for n < N via the closed-form oscillation; exactly periodic
// with period 2 pi / Omega.
std::vector<double> spectrum_series(const SubspaceState& s0, double t,
                                    std::size_t N);

}  // namespace conflow::subspace
