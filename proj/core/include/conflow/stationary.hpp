// Stationary states of the conformal flow, alpha_n(t) = A_n e^{-i(lambda -
// n omega) t}: constructors for every closed-form family, the rotating-frame
// defect of the nonlinear eigenvalue problem
//
//   (n+1)(lambda - n omega) A_n = sum S conj(A_j) A_k A_{n+j-k},
//
// and the variational functional K = H/2 - lambda Q + omega (E - Q) whose
// critical points they are.

#pragma once

#include "conflow/types.hpp"

namespace conflow::stationary {

struct StationaryState {
    ModeSpectrum amplitudes;
    double lambda = 0.0;
    double omega = 0.0;
    // rigorous bound on the truncation contribution to the defect; zero for
    // families with finitely many modes
    double tail_bound = 0.0;
};

enum class Branch { plus, minus };

// max_n |(n+1)(lambda - n omega) A_n - sum S conj(A_j) A_k A_m|
double residual(const StationaryState& st);

// A_n = c delta_{n,mode}; lambda = |c|^2, omega = 0.
StationaryState one_mode(std::size_t mode, Complex c, std::size_t truncation);

// A_n = c p^n (a = 0 on the subspace); lambda = Q = |c|^2/(1-|p|^2)^2.
StationaryState family_a0(Complex c, Complex p, std::size_t truncation);

// b(0) = -2c|p|^2, a(0) = c(1-|p|^2); lambda = |c|^2|p|^2/(1-|p|^2)^2 = Q/2.
StationaryState family_omega0(Complex c, Complex p, std::size_t truncation);

// The rotating pair with kappa = sqrt(|p|^4 - 14|p|^2 + 1), defined for
// |p| <= p* = 2 - sqrt(3); the branches collide at p* where kappa = 0.
// kappa is evaluated in the factored form ((2-sqrt 3)^2 - |p|^2)((2+sqrt
// 3)^2 - |p|^2) so the bifurcation point is hit exactly.
StationaryState family_pm(Complex c, Complex p, Branch branch,
                          std::size_t truncation);
double kappa_of(double abs_p);
double p_star();  // 2 - sqrt(3)

// u = c prod_k (conj(p_k) - z)/(1 - p_k z); lambda = |c|^2, omega = 0.
StationaryState blaschke_state(Complex c, const CVec& poles,
                               std::size_t truncation);

// u = c z^{N-1}/(1 - p^N z^N): only every N-th mode populated,
// lambda = |c|^2/(1-|p|^{2N})^2, omega = 0.
StationaryState decimated_state(Complex c, Complex p, std::size_t N,
                                std::size_t truncation);

double k_functional(const ModeSpectrum& state, double lambda, double omega);
// max-norm finite-difference gradient of K over all Re/Im components
double k_gradient_norm(const ModeSpectrum& state, double lambda, double omega,
                       double step = 1e-5);

}  // namespace conflow::stationary
