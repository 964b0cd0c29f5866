#include "conflow/resonant.hpp"

#include <algorithm>
#include <stdexcept>

#include "fft_util.hpp"

namespace conflow {

long interaction_coefficient(long j, long k, long l, long n) {
    if (j < 0 || k < 0 || l < 0 || n < 0)
        throw std::invalid_argument("interaction_coefficient: negative index");
    if ((j + k + l + n) % 2 != 0) return 0;
    const long lo = std::max(std::labs(j - k), std::labs(l - n));
    const long hi = std::min(j + k, l + n);
    return hi < lo ? 0 : (hi - lo) / 2 + 1;
}

// ---------------------------------------------------------------------------
// reference path
// ---------------------------------------------------------------------------

void flow_rhs_into(const CVec& alpha, CVec& out) {
    const long N = static_cast<long>(alpha.size());
    out.assign(alpha.size(), Complex(0.0, 0.0));
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0, 0.0);
        for (long j = 0; j < N; ++j) {
            const Complex cj = std::conj(alpha[j]);
            const long s = n + j;
            const long kmin = std::max<long>(0, s - N + 1);
            const long kmax = std::min<long>(s, N - 1);
            Complex inner(0.0, 0.0);
            for (long k = kmin; k <= kmax; ++k) {
                const long m = s - k;
                // on the resonant set S = min(n,j,k,m)+1
                const double w = static_cast<double>(
                    std::min(std::min(n, j), std::min(k, m)) + 1);
                inner += w * alpha[k] * alpha[m];
            }
            acc += cj * inner;
        }
        out[n] = Complex(0.0, -1.0) * acc / static_cast<double>(n + 1);
    }
}

ModeSpectrum flow_rhs(const ModeSpectrum& state) {
    ModeSpectrum d;
    flow_rhs_into(state.amps, d.amps);
    return d;
}

// ---------------------------------------------------------------------------
// FFT path
//
// With m = n+j-k the trilinear sum G_n = sum S conj(a_j) a_k a_m becomes,
// through 2 min(n,j,k,m) = n + j - |k-n| - |k-j| and |k-j| = |n-m|,
//
//   G_n = (n/2+1) A_n + B_n/2 - X_n,
//   A_n = sum_j conj(a_j) C(n+j),      C(s) = sum_{k+m=s} a_k a_m,
//   B_n = sum_j j conj(a_j) C(n+j),
//   X_n = sum_d |d| R(d) a_{n-d},      R(d) = sum_j conj(a_j) a_{j+d},
//
// all windowed to indices < N, which the zero-padded transforms reproduce
// exactly.
// ---------------------------------------------------------------------------

namespace {

struct FlowScratch {
    CVec fa, fw, acc, r, kern;
};

void flow_fast_kernel(const CVec& alpha, CVec& g) {
    using detail::fft_backward;
    using detail::fft_forward;
    const std::size_t N = alpha.size();
    const std::size_t L = detail::next_pow2(std::max<std::size_t>(4, 2 * N));

    thread_local FlowScratch s;
    s.fa.assign(L, Complex(0));
    s.fw.assign(L, Complex(0));
    for (std::size_t n = 0; n < N; ++n) {
        s.fa[n] = alpha[n];
        s.fw[n] = static_cast<double>(n) * alpha[n];
    }
    fft_forward(s.fa);
    fft_forward(s.fw);

    // R(d) = IFFT(conj(Fa) Fa); keep only the exact support |d| < N.
    s.r.resize(L);
    for (std::size_t i = 0; i < L; ++i) s.r[i] = std::conj(s.fa[i]) * s.fa[i];
    fft_backward(s.r);
    s.kern.assign(L, Complex(0));
    for (std::size_t d = 1; d < N; ++d) {
        s.kern[d] = static_cast<double>(d) * s.r[d];
        s.kern[L - d] = static_cast<double>(d) * s.r[L - d];
    }
    fft_forward(s.kern);

    // A_n and X_n folded into one pass over the spectrum of a.
    s.acc.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        const Complex fa2 = s.fa[i] * s.fa[i];
        s.acc[i] = std::conj(s.fa[i]) * fa2;      // -> A
        s.kern[i] *= s.fa[i];                     // -> X spectrum
        s.fw[i] = std::conj(s.fw[i]) * fa2;       // -> B
    }
    fft_backward(s.acc);
    fft_backward(s.fw);
    fft_backward(s.kern);

    g.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double half_n = 0.5 * static_cast<double>(n);
        g[n] = (half_n + 1.0) * s.acc[n] + 0.5 * s.fw[n] - s.kern[n];
    }
}

}  // namespace

void flow_rhs_fast_into(const CVec& alpha, CVec& out) {
    const std::size_t N = alpha.size();
    thread_local CVec g;
    flow_fast_kernel(alpha, g);
    out.resize(N);
    for (std::size_t n = 0; n < N; ++n)
        out[n] = Complex(0.0, -1.0) * g[n] / static_cast<double>(n + 1);
}

ModeSpectrum flow_rhs_fast(const ModeSpectrum& state) {
    ModeSpectrum d;
    flow_rhs_fast_into(state.amps, d.amps);
    return d;
}

// ---------------------------------------------------------------------------
// Hamiltonian and charges
// ---------------------------------------------------------------------------

double hamiltonian(const ModeSpectrum& state) {
    const CVec& a = state.amps;
    const long N = static_cast<long>(a.size());
    double h = 0.0;
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0, 0.0);
        for (long j = 0; j < N; ++j) {
            const Complex cj = std::conj(a[j]);
            const long s = n + j;
            const long kmin = std::max<long>(0, s - N + 1);
            const long kmax = std::min<long>(s, N - 1);
            Complex inner(0.0, 0.0);
            for (long k = kmin; k <= kmax; ++k) {
                const long m = s - k;
                const double w = static_cast<double>(
                    std::min(std::min(n, j), std::min(k, m)) + 1);
                inner += w * a[k] * a[m];
            }
            acc += cj * inner;
        }
        h += (std::conj(a[n]) * acc).real();
    }
    return h;
}

double hamiltonian_fast(const ModeSpectrum& state) {
    thread_local CVec g;
    flow_fast_kernel(state.amps, g);
    double h = 0.0;
    for (std::size_t n = 0; n < state.amps.size(); ++n)
        h += (std::conj(state.amps[n]) * g[n]).real();
    return h;
}

namespace {

ChargeSet charges_impl(const ModeSpectrum& state, bool fast) {
    ChargeSet c;
    for (std::size_t n = 0; n < state.amps.size(); ++n) {
        const double w = static_cast<double>(n + 1);
        const double e = abs2(state.amps[n]);
        c.Q += w * e;
        c.E += w * w * e;
    }
    c.H = fast ? hamiltonian_fast(state) : hamiltonian(state);
    return c;
}

}  // namespace

ChargeSet charges(const ModeSpectrum& state) { return charges_impl(state, false); }
ChargeSet charges_fast(const ModeSpectrum& state) { return charges_impl(state, true); }

// ---------------------------------------------------------------------------

ModeSpectrum apply_symmetry(const ModeSpectrum& state, double scale,
                            double global_phase, double mode_phase) {
    ModeSpectrum out = state;
    const Complex g = std::polar(scale, global_phase);
    for (std::size_t n = 0; n < out.amps.size(); ++n)
        out.amps[n] *= g * std::polar(1.0, static_cast<double>(n) * mode_phase);
    return out;
}

ModeSpectrum decimate(const ModeSpectrum& state, std::size_t N,
                      std::size_t out_truncation) {
    const std::size_t M = state.truncation();
    const std::size_t required = M * (N + 1);
    if (out_truncation == 0) out_truncation = required;
    if (out_truncation < required)
        throw std::invalid_argument("decimate: truncation overflow");
    ModeSpectrum out = ModeSpectrum::zero(out_truncation);
    for (std::size_t m = 0; m < M; ++m) out[m * (N + 1) + N] = state[m];
    return out;
}

}  // namespace conflow
