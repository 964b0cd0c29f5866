#include "conflow/szego.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conflow/genfunc.hpp"
#include "fft_util.hpp"

namespace conflow::szego {

namespace {

void require_pole(Complex p) {
    if (!(std::abs(p) < 1.0)) throw std::domain_error("szego: requires |p| < 1");
}

// G_n = sum_j conj(a_j) C(n+j), C = a * a (windowed to indices < N)
void all_ones_kernel(const CVec& alpha, CVec& g) {
    using detail::fft_backward;
    using detail::fft_forward;
    const std::size_t N = alpha.size();
    const std::size_t L = detail::next_pow2(std::max<std::size_t>(4, 2 * N));
    thread_local CVec buf;
    buf.assign(L, Complex(0));
    std::copy(alpha.begin(), alpha.end(), buf.begin());
    fft_forward(buf);
    for (auto& z : buf) z = std::conj(z) * z * z;
    fft_backward(buf);
    g.assign(buf.begin(), buf.begin() + static_cast<long>(N));
}

}  // namespace

void rhs_into(const CVec& alpha, CVec& out) {
    const long N = static_cast<long>(alpha.size());
    out.assign(alpha.size(), Complex(0));
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0);
        for (long j = 0; j < N; ++j) {
            const Complex cj = std::conj(alpha[j]);
            const long s = n + j;
            const long kmin = std::max<long>(0, s - N + 1);
            const long kmax = std::min<long>(s, N - 1);
            Complex inner(0.0);
            for (long k = kmin; k <= kmax; ++k) inner += alpha[k] * alpha[s - k];
            acc += cj * inner;
        }
        out[n] = Complex(0.0, -1.0) * acc;
    }
}

void rhs_fast_into(const CVec& alpha, CVec& out) {
    thread_local CVec g;
    all_ones_kernel(alpha, g);
    out.resize(alpha.size());
    for (std::size_t n = 0; n < alpha.size(); ++n)
        out[n] = Complex(0.0, -1.0) * g[n];
}

ModeSpectrum rhs(const ModeSpectrum& state) {
    ModeSpectrum d;
    rhs_into(state.amps, d.amps);
    return d;
}

double hamiltonian(const ModeSpectrum& state) {
    const CVec& a = state.amps;
    const long N = static_cast<long>(a.size());
    double h = 0.0;
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0);
        for (long j = 0; j < N; ++j) {
            const Complex cj = std::conj(a[j]);
            const long s = n + j;
            const long kmin = std::max<long>(0, s - N + 1);
            const long kmax = std::min<long>(s, N - 1);
            Complex inner(0.0);
            for (long k = kmin; k <= kmax; ++k) inner += a[k] * a[s - k];
            acc += cj * inner;
        }
        h += (std::conj(a[n]) * acc).real();
    }
    return h;
}

namespace {

SzegoCharges charges_impl(const ModeSpectrum& state, bool fast) {
    SzegoCharges c;
    for (std::size_t n = 0; n < state.amps.size(); ++n) {
        const double e = abs2(state.amps[n]);
        c.M += e;
        c.P += static_cast<double>(n) * e;
    }
    if (fast) {
        thread_local CVec g;
        all_ones_kernel(state.amps, g);
        double h = 0.0;
        for (std::size_t n = 0; n < state.amps.size(); ++n)
            h += (std::conj(state.amps[n]) * g[n]).real();
        c.H = h;
    } else {
        c.H = hamiltonian(state);
    }
    return c;
}

}  // namespace

SzegoCharges charges(const ModeSpectrum& state) { return charges_impl(state, false); }
SzegoCharges charges_fast(const ModeSpectrum& state) { return charges_impl(state, true); }

double pole_mass(const SzegoPoleState& s) {
    require_pole(s.p);
    return abs2(s.b) + abs2(s.a + s.b * s.p) / (1.0 - abs2(s.p));
}

double pole_momentum(const SzegoPoleState& s) {
    require_pole(s.p);
    const double u = 1.0 - abs2(s.p);
    return abs2(s.a + s.b * s.p) / (u * u);
}

ModeSpectrum pole_lift(const SzegoPoleState& s, std::size_t N) {
    require_pole(s.p);
    ModeSpectrum out = ModeSpectrum::zero(N);
    if (N == 0) return out;
    out[0] = s.b;
    Complex amp = s.a + s.b * s.p;
    for (std::size_t n = 1; n < N; ++n) {
        out[n] = amp;
        amp *= s.p;
    }
    return out;
}

SzegoPoleState single_pole_solution(double a0, double b0, double p0, double t) {
    const SzegoPoleState init{Complex(a0), Complex(b0), Complex(p0)};
    const double M = pole_mass(init);
    const double P = pole_momentum(init);
    const double w2 = (M + P) * (M + P) - 4.0 * P * a0 * a0;
    const double w = std::sqrt(std::max(w2, 0.0));  // >= 0 for pole data
    const double omega = 0.5 * w;
    const double cwt = std::cos(omega * t);
    // sin(omega t)/(2 omega), finite in the omega -> 0 special case
    const double swt = omega > 0.0 ? std::sin(omega * t) / (2.0 * omega)
                                   : 0.5 * t;
    const Complex I(0.0, 1.0);

    SzegoPoleState out;
    out.a = a0 * std::polar(1.0, -M * t);
    out.b = (b0 * cwt - I * (b0 * (M + P) + 2.0 * a0 * p0 * P) * swt) *
            std::polar(1.0, -0.5 * (M + P) * t);
    out.p = (p0 * cwt - I * (p0 * (M + P) + 2.0 * a0 * b0) * swt) *
            std::polar(1.0, -0.5 * (M - P) * t);
    return out;
}

std::vector<double> mass_spectrum(const SzegoPoleState& s, std::size_t N) {
    const double M = pole_mass(s);
    const double P = pole_momentum(s);
    const double rho = abs2(s.p);
    std::vector<double> e(N, 0.0);
    if (N == 0) return e;
    e[0] = M - P * (1.0 - rho);
    double rn = 1.0;
    for (std::size_t n = 1; n < N; ++n) {
        e[n] = P * (1.0 - rho) * (1.0 - rho) * rn;
        rn *= rho;
    }
    return e;
}

TwoModeInstability two_mode_instability(double eps) {
    const double root = std::sqrt(1.0 + eps * eps);
    return TwoModeInstability{2.0 * eps * root, 1.0 / root};
}

Complex two_mode_p(double eps, double t) {
    const auto tm = two_mode_instability(eps);
    return Complex(0.0, -1.0) * tm.sup_p * std::sin(tm.omega * t) *
           std::polar(1.0, -2.0 * eps * eps * t);
}

SzegoStationary stationary_blaschke(Complex c, const CVec& poles,
                                    std::size_t truncation) {
    SzegoStationary st;
    st.amplitudes =
        genfunc::taylor_coeffs(genfunc::blaschke_product(c, poles), truncation);
    st.lambda = abs2(c);
    st.omega = 0.0;
    return st;
}

SzegoStationary stationary_decimated(Complex c, Complex p, std::size_t N,
                                     std::size_t ell, std::size_t truncation) {
    require_pole(p);
    if (N == 0 || ell > N - 1)
        throw std::invalid_argument("stationary_decimated: need N >= 1, ell <= N-1");
    const double rhoN = std::pow(abs2(p), static_cast<double>(N));
    const double lam_full = abs2(c) / ((1.0 - rhoN) * (1.0 - rhoN));
    const double omega_p = abs2(c) / (static_cast<double>(N) * (1.0 - rhoN));

    SzegoStationary st;
    st.amplitudes = ModeSpectrum::zero(truncation);
    Complex pN(1.0);
    for (std::size_t i = 0; i < N; ++i) pN *= p;
    Complex amp = c;
    for (std::size_t n = ell; n < truncation; n += N) {
        st.amplitudes[n] = amp;
        amp *= pN;
    }
    // alpha_n(t) = A_n e^{-i(lam_full + (n-ell) omega_p) t}
    st.lambda = lam_full - static_cast<double>(ell) * omega_p;
    st.omega = -omega_p;
    return st;
}

double stationary_residual(const SzegoStationary& st) {
    const CVec& a = st.amplitudes.amps;
    const long N = static_cast<long>(a.size());
    double worst = 0.0;
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0);
        for (long j = 0; j < N; ++j) {
            const Complex cj = std::conj(a[j]);
            const long s = n + j;
            const long kmin = std::max<long>(0, s - N + 1);
            const long kmax = std::min<long>(s, N - 1);
            Complex inner(0.0);
            for (long k = kmin; k <= kmax; ++k) inner += a[k] * a[s - k];
            acc += cj * inner;
        }
        const Complex lhs =
            (st.lambda - static_cast<double>(n) * st.omega) * a[n];
        worst = std::max(worst, std::abs(lhs - acc));
    }
    return worst;
}

}  // namespace conflow::szego
