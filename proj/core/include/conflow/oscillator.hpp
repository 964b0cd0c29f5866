// The parent system behind the conformal flow: the cubic wave equation on
// the 3-sphere reduced to coupled oscillators
//
//   d^2 c_n/dt^2 + (n+1)^2 c_n = - sum_{jkl} S_{jkln} c_j c_k c_l,
//
// pure Galerkin in sine modes with the exact interaction tensor (no
// collocation), envelope extraction by variation of constants, the averaged
// system in slow time with its original factors 2 and -3, and a quantitative
// validator of the time-averaging approximation.

#pragma once

#include <cstdint>
#include <vector>

#include "conflow/integrator.hpp"
#include "conflow/types.hpp"

namespace conflow::oscillator {

// S_{jkln} for all indices < N, stored once per sorted index quadruple with
// the arrangement multiplicities folded into contraction weights.
class InteractionTensor {
  public:
    // desk-scale guard: the canonical store is O(N^4/24) entries
    static InteractionTensor build(std::size_t truncation,
                                   std::size_t max_truncation = 48);

    std::size_t truncation() const { return n_; }
    double value(long j, long k, long l, long n) const;  // closed form

    // acc_n = -(n+1)^2 c_n - sum_{jkl} S_{jkln} c_j c_k c_l
    void accelerations(const std::vector<double>& c,
                       std::vector<double>& acc) const;

    // 1/2 sum cdot^2 + 1/2 sum (n+1)^2 c^2 + 1/4 sum S c c c c; conserved by
    // the truncated dynamics.
    double energy(const std::vector<double>& c,
                  const std::vector<double>& cdot) const;

    struct CubicEntry {
        std::uint32_t n, i1, i2, i3;
        double w;
    };
    const std::vector<CubicEntry>& cubic_entries() const { return cubic_; }

  private:
    std::size_t n_ = 0;
    std::vector<CubicEntry> cubic_;
    struct QuarticEntry {
        std::uint32_t i1, i2, i3, i4;
        double w;
    };
    std::vector<QuarticEntry> quartic_;
};

struct FieldState {
    std::vector<double> c;
    std::vector<double> cdot;
    double epsilon = 1.0;  // amplitude scale used by the averaging validator
};

// packing for the shared integrator: z_n = c_n + i cdot_n
CVec pack(const FieldState& fs);
FieldState unpack(const CVec& z, double epsilon = 1.0);
void first_order_rhs(const InteractionTensor& tensor, const CVec& z, CVec& dz);

// beta_n = (c_n - i cdot_n/(n+1)) e^{-i(n+1)t} / 2 and its exact inverse
CVec to_envelope(const FieldState& fs, double t);
FieldState from_envelope(const CVec& beta, double t);

// Slow-time averaged system, factors kept as in the variation-of-constants
// derivation: 2 i (n+1) d alpha_n/d tau = -3 sum_{j+k-l=n} S_{jkln} a_j a_k
// conj(a_l).  Related to the conformal flow by t_flow = -(3/2) tau.
void averaged_rhs_into(const CVec& alpha, CVec& out);

struct AveragingReport {
    double eps = 0.0;
    double horizon = 0.0;        // fast-time horizon c_T / eps^2
    double err_max = 0.0;        // max_n,t |beta_n(t) - eps alpha_n(eps^2 t)|
    double tail_fraction = 0.0;  // worst fraction of envelope mass in the
                                 // top quarter of the mode window
    std::size_t samples = 0;
};

// Integrates the full oscillator system from envelope data beta(0) = eps *
// alpha0 and the averaged system in slow time, then reports the maximal
// envelope deviation over t <= c_T/eps^2.  Throws on tail overflow (energy
// reaching the truncation boundary).
AveragingReport validate_averaging(const ModeSpectrum& alpha0, double eps,
                                   double c_T, std::size_t N,
                                   const IntegratorConfig& cfg);

// v(t,x) = sum c_n sin((n+1)x) and phi = v/sin x evaluated through the
// Chebyshev-U series (finite at the endpoints: sin((n+1)x)/sin x -> n+1).
std::vector<double> grid_evaluate_phi(const FieldState& fs,
                                      const std::vector<double>& xs);
std::vector<double> grid_evaluate_v(const FieldState& fs,
                                    const std::vector<double>& xs);

}  // namespace conflow::oscillator
