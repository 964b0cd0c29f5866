// The cubic Szego equation i da_n/dt = sum conj(a_j) a_k a_{n+j-k} (every
// coupling coefficient equal to 1) as a structurally parallel benchmark for
// the conformal flow: right-hand sides, the M/P charges, the explicitly
// solvable single-pole subspace u = (b + a z)/(1 - p z), the two-mode
// instability, and the stationary families.  Shares the truncated-Hamiltonian
// convention and the integrator with the conformal flow.

#pragma once

#include <vector>

#include "conflow/types.hpp"

namespace conflow::szego {

struct SzegoPoleState {
    Complex a, b, p;  // |p| < 1
};

struct SzegoCharges {
    double M = 0.0;  // sum |alpha_n|^2
    double P = 0.0;  // sum n |alpha_n|^2
    double H = 0.0;  // sum conj(a_n) conj(a_j) a_k a_{n+j-k}
};

void rhs_into(const CVec& alpha, CVec& out);            // reference O(N^3)
void rhs_fast_into(const CVec& alpha, CVec& out);       // FFT convolution
ModeSpectrum rhs(const ModeSpectrum& state);

double hamiltonian(const ModeSpectrum& state);
SzegoCharges charges(const ModeSpectrum& state);
SzegoCharges charges_fast(const ModeSpectrum& state);

// M, P of a pole state: M = |b|^2 + |a+bp|^2/(1-|p|^2),
// P = |a+bp|^2/(1-|p|^2)^2.
double pole_mass(const SzegoPoleState& s);
double pole_momentum(const SzegoPoleState& s);

// alpha_0 = b, alpha_n = (a + b p) p^{n-1} for n >= 1
ModeSpectrum pole_lift(const SzegoPoleState& s, std::size_t N);

// Closed-form single-pole evolution for real initial data (a0, b0, p0):
//   a(t) = a0 e^{-iMt},
//   b(t) = (b0 cos wt - i (b0(M+P) + 2 a0 p0 P)/(2w) sin wt) e^{-i(M+P)t/2},
//   p(t) = (p0 cos wt - i (p0(M+P) + 2 a0 b0)/(2w) sin wt) e^{-i(M-P)t/2},
// with w = sqrt((M+P)^2 - 4 P a0^2)/2 (w = 0 handled by the sinc limit).
SzegoPoleState single_pole_solution(double a0, double b0, double p0, double t);

// mass spectrum of a pole state through (M, P, |p|^2) only:
// |alpha_0|^2 = M - P(1-|p|^2), |alpha_n|^2 = P (1-|p|^2)^2 |p|^{2(n-1)}.
std::vector<double> mass_spectrum(const SzegoPoleState& s, std::size_t N);

// Two-mode data a0 = 1, b0 = 2 eps, p0 = 0:
//   p(t) = -i sin(w t) e^{-2 i eps^2 t} / sqrt(1+eps^2), w = 2 eps
//   sqrt(1+eps^2); sup_t |p| = (1+eps^2)^{-1/2} -> 1 as eps -> 0.
struct TwoModeInstability {
    double omega;
    double sup_p;
};
TwoModeInstability two_mode_instability(double eps);
Complex two_mode_p(double eps, double t);

// Stationary families: Blaschke products (lambda = |c|^2, omega = 0) and
// the decimated family u = c z^l/(1 - p^N z^N) with
// lambda_full = |c|^2/(1-|p|^{2N})^2 and N omega_p = |c|^2/(1-|p|^{2N}),
// expressed in the alpha_n(t) = A_n e^{-i(lambda - n omega)t} convention.
struct SzegoStationary {
    ModeSpectrum amplitudes;
    double lambda = 0.0;
    double omega = 0.0;
};
SzegoStationary stationary_blaschke(Complex c, const CVec& poles,
                                    std::size_t truncation);
SzegoStationary stationary_decimated(Complex c, Complex p, std::size_t N,
                                     std::size_t ell, std::size_t truncation);

// max_n |(lambda - n omega) A_n - sum conj(A_j) A_k A_m|
double stationary_residual(const SzegoStationary& st);

}  // namespace conflow::szego
