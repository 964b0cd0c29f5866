// The conformal flow on the truncated mode space:
//
//   i (n+1) d/dt alpha_n = sum_{j,k} S_{n,j,k,n+j-k}
//                          conj(alpha_j) alpha_k alpha_{n+j-k},
//
// together with its interaction coefficients, Hamiltonian, charges and
// symmetry maps.  Truncation convention: the quartic Hamiltonian is cut to
// indices < N and the flow is derived from the cut Hamiltonian, i.e. every
// term that references an index >= N is dropped.  This keeps Q, E and H
// exactly conserved by the truncated flow.

#pragma once

#include "conflow/types.hpp"

namespace conflow {

// S_{jkln} = (2/pi) Int_0^pi sin((j+1)x) sin((k+1)x) sin((l+1)x) sin((n+1)x)
//            / sin^2 x dx, evaluated in closed form by counting overlapping
// terms of the Chebyshev product expansion
//   U_j U_k = sum_{r=|j-k|, step 2}^{j+k} U_r.
// Fully symmetric in all four indices; equals min(j,k,l,n)+1 when j+k = l+n
// and 0 whenever j+k+l+n is odd.
long interaction_coefficient(long j, long k, long l, long n);

// Reference right-hand side, direct double sum, O(N^2) per recipient mode.
void flow_rhs_into(const CVec& alpha, CVec& out);
ModeSpectrum flow_rhs(const ModeSpectrum& state);

// Fast right-hand side, O(N log N) via FFT convolutions of the decomposition
//   2 min(n,j,k,m) = n + j - |k-n| - |k-j|   (valid on k+m = n+j).
// Agrees with the reference path to round-off; see tests for the comparison
// gate.
void flow_rhs_fast_into(const CVec& alpha, CVec& out);
ModeSpectrum flow_rhs_fast(const ModeSpectrum& state);

// Quartic Hamiltonian H = sum S conj(a_n) conj(a_j) a_k a_{n+j-k} over the
// truncated window.  The _fast variant evaluates H = Re sum conj(a_n) G_n
// through the FFT kernel.
double hamiltonian(const ModeSpectrum& state);
double hamiltonian_fast(const ModeSpectrum& state);

ChargeSet charges(const ModeSpectrum& state);       // H by reference path
ChargeSet charges_fast(const ModeSpectrum& state);  // H by FFT kernel

// alpha_n -> scale * e^{i global_phase} e^{i n mode_phase} alpha_n
ModeSpectrum apply_symmetry(const ModeSpectrum& state, double scale,
                            double global_phase, double mode_phase);

// Mode decimation alpha'_{m(N+1)+N} = alpha_m (all other modes zero); maps
// solutions to solutions with no time rescaling.  out_truncation == 0 picks
// the minimal sufficient value M*(N+1); smaller explicit values throw.
ModeSpectrum decimate(const ModeSpectrum& state, std::size_t N,
                      std::size_t out_truncation = 0);

}  // namespace conflow
