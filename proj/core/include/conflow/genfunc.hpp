// Generating-function machinery: exact Taylor extraction from rational and
// Blaschke-product forms, the master summation formula and its weighted
// variants, and a contour-integral evaluation of the flow right-hand side
// that is fully independent of the mode-space double sum.

#pragma once

#include <array>

#include "conflow/types.hpp"

namespace conflow::genfunc {

// u(z) = numerator(z) / prod_k (1 - p_k z), all |p_k| < 1.
struct RationalGenFn {
    CVec numerator;  // polynomial coefficients, ascending powers of z
    CVec poles;      // the p_k parameters
};

// Exact linear recurrence on the expanded denominator; no sampling and no
// numerical differentiation.
ModeSpectrum taylor_coeffs(const RationalGenFn& f, std::size_t N);

// c * prod_k (conj(p_k) - z)/(1 - p_k z)
RationalGenFn blaschke_product(Complex c, const CVec& poles);

// sum_{j>=0} sum_{k=0}^{n+j} [min(n,j,k,n+j-k)+1] rho^j theta^k
//   = (1 + theta + ... + theta^n) / ((1-rho)(1-theta rho)).
// Closed form uses the finite geometric partial sum, so theta = 1 is exact.
Complex master_sum_closed(Complex rho, Complex theta, int n);
Complex master_sum_brute(Complex rho, Complex theta, int n,
                         double tail_tol = 1e-12);

// The eight weighted sums sum [min+1] j^K k^L rho^j for
// (K,L) = (0,0),(1,0),(0,1),(2,0),(0,2),(1,1),(2,1),(1,2), in that order.
// Every entry is (n+1) times a polynomial in n of degree L.
std::array<double, 8> appendix_sums(int n, double rho);

// Right-hand side of the flow through the complex-plane representation
//   i d/dt d/dz (z u) = (1/2 pi i) Oint dw/w utilde(w)
//                       ((w u(w) - z u(z)) / (w - z))^2,
// discretized by uniform sampling on |w| = radius.  n_samples must be a
// power of two >= 4N.  Must agree with the direct mode-space path.
ModeSpectrum rhs_via_contour(const ModeSpectrum& state, std::size_t n_samples,
                             double radius);

}  // namespace conflow::genfunc
