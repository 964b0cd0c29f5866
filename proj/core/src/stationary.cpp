#include "conflow/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conflow/genfunc.hpp"
#include "conflow/resonant.hpp"
#include "conflow/subspace3d.hpp"

namespace conflow::stationary {

namespace {

void require_pole(Complex p) {
    if (!(std::abs(p) < 1.0))
        throw std::domain_error("stationary family requires |p| < 1");
}

// Defect contribution of the dropped tail: every missing term has at least
// one index >= N, S <= n+1, and the amplitude sums are taken over the full
// analytic family.  sum_all = sum_m |A_m|, tail = sum_{m>=N} |A_m|.
double tail_defect_bound(std::size_t N, double sum_all, double tail) {
    return 3.0 * static_cast<double>(N) * sum_all * sum_all * tail;
}

// sums of |b + a n| r^n over n >= N and over all n, for geometric families
std::pair<double, double> amp_sums(double b, double a, double r, std::size_t N) {
    double all = 0.0, tail = 0.0, rn = 1.0;
    for (std::size_t n = 0; n < N + 200000; ++n) {
        const double amp = std::abs(b + a * static_cast<double>(n)) * rn;
        all += amp;
        if (n >= N) {
            tail += amp;
            if (amp < 1e-320) break;
        }
        rn *= r;
    }
    return {all, tail};
}

}  // namespace

double residual(const StationaryState& st) {
    const CVec& a = st.amplitudes.amps;
    const long N = static_cast<long>(a.size());
    double worst = 0.0;
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
        const Complex lhs = static_cast<double>(n + 1) *
                            (st.lambda - static_cast<double>(n) * st.omega) *
                            a[n];
        worst = std::max(worst, std::abs(lhs - acc));
    }
    return worst;
}

StationaryState one_mode(std::size_t mode, Complex c, std::size_t truncation) {
    if (mode >= truncation)
        throw std::invalid_argument("one_mode: mode index outside truncation");
    StationaryState st;
    st.amplitudes = ModeSpectrum::zero(truncation);
    st.amplitudes[mode] = c;
    st.lambda = abs2(c);
    st.omega = 0.0;
    return st;
}

StationaryState family_a0(Complex c, Complex p, std::size_t truncation) {
    require_pole(p);
    const double rho = abs2(p);
    StationaryState st;
    st.amplitudes = subspace::lift(subspace::SubspaceState{c, 0.0, p}, truncation);
    st.lambda = abs2(c) / ((1.0 - rho) * (1.0 - rho));
    st.omega = 0.0;
    auto [all, tail] = amp_sums(std::abs(c), 0.0, std::abs(p), truncation);
    st.tail_bound = tail_defect_bound(truncation, all, tail);
    return st;
}

StationaryState family_omega0(Complex c, Complex p, std::size_t truncation) {
    require_pole(p);
    const double rho = abs2(p);
    const Complex b0 = -2.0 * rho * c;
    const Complex a0 = (1.0 - rho) * c;
    StationaryState st;
    st.amplitudes = subspace::lift(subspace::SubspaceState{b0, a0, p}, truncation);
    st.lambda = abs2(c) * rho / ((1.0 - rho) * (1.0 - rho));
    st.omega = 0.0;
    auto [all, tail] = amp_sums(std::abs(b0), std::abs(a0), std::abs(p), truncation);
    st.tail_bound = tail_defect_bound(truncation, all, tail);
    return st;
}

double p_star() { return 2.0 - std::sqrt(3.0); }

double kappa_of(double abs_p) {
    const double rho = abs_p * abs_p;
    const double lo = p_star() * p_star();
    const double hi = (2.0 + std::sqrt(3.0)) * (2.0 + std::sqrt(3.0));
    const double k2 = (lo - rho) * (hi - rho);
    if (k2 < 0.0)
        throw std::domain_error("kappa: imaginary for |p| > p* = 2 - sqrt(3)");
    return std::sqrt(k2);
}

StationaryState family_pm(Complex c, Complex p, Branch branch,
                          std::size_t truncation) {
    require_pole(p);
    const double rho = abs2(p);
    if (rho > p_star() * p_star()) {
        std::ostringstream msg;
        msg << "family_pm: |p| = " << std::abs(p)
            << " exceeds p* = 2 - sqrt(3) = " << p_star();
        throw std::domain_error(msg.str());
    }
    const double kap = kappa_of(std::abs(p));
    const double sgn = branch == Branch::plus ? 1.0 : -1.0;
    const double c2 = abs2(c);
    const double u = 1.0 - rho;

    const Complex b0 = -c * (1.0 + 5.0 * rho + sgn * kap);
    const Complex a0 = 2.0 * c * u;
    StationaryState st;
    st.amplitudes = subspace::lift(subspace::SubspaceState{b0, a0, p}, truncation);
    st.omega = c2 / 3.0 * (1.0 + rho + sgn * kap) / u;
    st.lambda = 2.0 * c2 / 3.0 *
        ((3.0 - 4.0 * rho) / u + sgn * (3.0 + 4.0 * rho) * kap / (u * u));
    auto [all, tail] = amp_sums(std::abs(b0), std::abs(a0), std::abs(p), truncation);
    st.tail_bound = tail_defect_bound(truncation, all, tail);
    return st;
}

StationaryState blaschke_state(Complex c, const CVec& poles,
                               std::size_t truncation) {
    for (const auto& p : poles) require_pole(p);
    StationaryState st;
    st.amplitudes =
        genfunc::taylor_coeffs(genfunc::blaschke_product(c, poles), truncation);
    st.lambda = abs2(c);
    st.omega = 0.0;
    // geometric envelope: |A_n| <= C r^n with r the largest pole modulus
    double r = 0.0;
    for (const auto& p : poles) r = std::max(r, std::abs(p));
    if (r > 0.0 && truncation > 0) {
        double cmax = 0.0;
        double rn = 1.0;
        for (std::size_t n = 0; n < truncation; ++n) {
            cmax = std::max(cmax, std::abs(st.amplitudes[n]) / rn);
            rn *= r;
        }
        const double all = cmax / (1.0 - r);
        const double tail = cmax * std::pow(r, static_cast<double>(truncation)) /
                            (1.0 - r);
        st.tail_bound = tail_defect_bound(truncation, all, tail);
    }
    return st;
}

StationaryState decimated_state(Complex c, Complex p, std::size_t N,
                                std::size_t truncation) {
    require_pole(p);
    if (N == 0) throw std::invalid_argument("decimated_state: N >= 1 required");
    const double rhoN = std::pow(abs2(p), static_cast<double>(N));
    StationaryState st;
    st.amplitudes = ModeSpectrum::zero(truncation);
    Complex pN(1.0);
    for (std::size_t i = 0; i < N; ++i) pN *= p;
    Complex amp = c;
    for (std::size_t n = N - 1; n < truncation; n += N) {
        st.amplitudes[n] = amp;
        amp *= pN;
    }
    st.lambda = abs2(c) / ((1.0 - rhoN) * (1.0 - rhoN));
    st.omega = 0.0;
    const double r = std::abs(pN);
    const double all = std::abs(c) / (1.0 - r);
    const double tail = std::abs(amp) / (1.0 - r);
    st.tail_bound = tail_defect_bound(truncation, all, tail);
    return st;
}

double k_functional(const ModeSpectrum& state, double lambda, double omega) {
    const ChargeSet c = charges(state);
    return 0.5 * c.H - lambda * c.Q + omega * (c.E - c.Q);
}

double k_gradient_norm(const ModeSpectrum& state, double lambda, double omega,
                       double step) {
    ModeSpectrum probe = state;
    double worst = 0.0;
    for (std::size_t n = 0; n < state.truncation(); ++n) {
        for (int part = 0; part < 2; ++part) {
            const Complex delta = part == 0 ? Complex(step, 0.0)
                                            : Complex(0.0, step);
            probe[n] = state[n] + delta;
            const double kp = k_functional(probe, lambda, omega);
            probe[n] = state[n] - delta;
            const double km = k_functional(probe, lambda, omega);
            probe[n] = state[n];
            worst = std::max(worst, std::abs(kp - km) / (2.0 * step));
        }
    }
    return worst;
}

}  // namespace conflow::stationary
