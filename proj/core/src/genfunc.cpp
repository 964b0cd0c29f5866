#include "conflow/genfunc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conflow::genfunc {

ModeSpectrum taylor_coeffs(const RationalGenFn& f, std::size_t N) {
    for (const auto& p : f.poles)
        if (!(std::abs(p) < 1.0))
            throw std::domain_error("taylor_coeffs: pole parameter |p| >= 1");

    // expand denominator prod (1 - p_k z)
    CVec den{Complex(1.0)};
    for (const auto& p : f.poles) {
        CVec next(den.size() + 1, Complex(0));
        for (std::size_t i = 0; i < den.size(); ++i) {
            next[i] += den[i];
            next[i + 1] -= p * den[i];
        }
        den = std::move(next);
    }

    ModeSpectrum out = ModeSpectrum::zero(N);
    for (std::size_t n = 0; n < N; ++n) {
        Complex v = n < f.numerator.size() ? f.numerator[n] : Complex(0);
        const std::size_t mmax = std::min(n, den.size() - 1);
        for (std::size_t m = 1; m <= mmax; ++m) v -= den[m] * out[n - m];
        out[n] = v;
    }
    return out;
}

RationalGenFn blaschke_product(Complex c, const CVec& poles) {
    RationalGenFn f;
    f.poles = poles;
    f.numerator = {c};
    for (const auto& p : poles) {
        CVec next(f.numerator.size() + 1, Complex(0));
        for (std::size_t i = 0; i < f.numerator.size(); ++i) {
            next[i] += std::conj(p) * f.numerator[i];
            next[i + 1] -= f.numerator[i];
        }
        f.numerator = std::move(next);
    }
    return f;
}

Complex master_sum_closed(Complex rho, Complex theta, int n) {
    if (!(std::abs(rho) < 1.0) || !(std::abs(theta * rho) < 1.0))
        throw std::domain_error("master_sum: requires |rho| < 1 and |theta rho| < 1");
    Complex partial(0.0), tp(1.0);
    for (int i = 0; i <= n; ++i) {  // 1 + theta + ... + theta^n
        partial += tp;
        tp *= theta;
    }
    return partial / ((1.0 - rho) * (1.0 - theta * rho));
}

Complex master_sum_brute(Complex rho, Complex theta, int n, double tail_tol) {
    Complex total(0.0), rj(1.0);
    for (int j = 0; j < 100000; ++j) {
        Complex inner(0.0), tk(1.0);
        for (int k = 0; k <= n + j; ++k) {
            const int m = n + j - k;
            inner += static_cast<double>(std::min(std::min(n, j), std::min(k, m)) + 1) * tk;
            tk *= theta;
        }
        const Complex term = inner * rj;
        total += term;
        if (j > n + 2 && std::abs(term) < tail_tol * std::max(1.0, std::abs(total)))
            return total;
        rj *= rho;
    }
    throw std::runtime_error("master_sum_brute: no convergence");
}

std::array<double, 8> appendix_sums(int n, double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error("appendix_sums: requires 0 <= rho < 1");
    const double nn = static_cast<double>(n);
    const double np1 = nn + 1.0;
    const double u = 1.0 - rho;
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const double r2 = rho * rho, r3 = r2 * rho;
    return {
        np1 / u2,
        2.0 * np1 * rho / u3,
        nn * np1 / (2.0 * u2) + np1 * rho / u3,
        2.0 * np1 * rho / u3 + 6.0 * np1 * r2 / u4,
        nn * np1 * (2.0 * nn + 1.0) / (6.0 * u2) + np1 * np1 * rho / u3 +
            2.0 * np1 * r2 / u4,
        np1 * np1 * rho / u3 + 3.0 * np1 * r2 / u4,
        np1 * np1 * rho / u3 + 3.0 * np1 * (nn + 3.0) * r2 / u4 +
            12.0 * np1 * r3 / u5,
        np1 * (2.0 * nn * nn + 4.0 * nn + 3.0) * rho / (3.0 * u3) +
            np1 * (3.0 * nn + 7.0) * r2 / u4 + 8.0 * np1 * r3 / u5,
    };
}

// ---------------------------------------------------------------------------
// contour path
// ---------------------------------------------------------------------------

ModeSpectrum rhs_via_contour(const ModeSpectrum& state, std::size_t n_samples,
                             double radius) {
    const std::size_t N = state.truncation();
    if (!(radius > 0.0 && radius < 1.0))
        throw std::domain_error("rhs_via_contour: radius must lie in (0,1)");
    if (!std::has_single_bit(n_samples) || n_samples < 4 * std::max<std::size_t>(N, 1))
        throw std::invalid_argument(
            "rhs_via_contour: n_samples must be a power of two >= 4N");
    if (N == 0) return ModeSpectrum{};

    // h(z) = z u(z), so the divided difference (h(w)-h(z))/(w-z) is a
    // polynomial in z whose coefficients q_n(w) follow a backward Horner
    // recurrence on the h coefficients.
    CVec h(N + 1, Complex(0));
    for (std::size_t n = 0; n < N; ++n) h[n + 1] = state[n];

    CVec f(N, Complex(0));   // accumulates F_n = (n+1) |above integrand|_n
    CVec q(N), sq(N);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(s) /
                           static_cast<double>(n_samples);
        const Complex w = std::polar(radius, phi);

        q[N - 1] = h[N];
        for (std::size_t n = N - 1; n-- > 0;) q[n] = h[n + 1] + w * q[n + 1];

        // utilde(w) = sum conj(alpha_n) w^{-n}, Horner in 1/w
        const Complex winv = 1.0 / w;
        Complex ut(0.0);
        for (std::size_t n = N; n-- > 0;) ut = ut * winv + std::conj(state[n]);

        // z-coefficients of the squared divided difference, degree < N kept
        for (std::size_t n = 0; n < N; ++n) {
            Complex acc(0.0);
            for (std::size_t i = 0; i <= n; ++i) acc += q[i] * q[n - i];
            sq[n] = acc;
        }
        for (std::size_t n = 0; n < N; ++n) f[n] += ut * sq[n];
    }

    ModeSpectrum out = ModeSpectrum::zero(N);
    const double inv = 1.0 / static_cast<double>(n_samples);
    for (std::size_t n = 0; n < N; ++n)
        out[n] = Complex(0.0, -1.0) * f[n] * inv / static_cast<double>(n + 1);
    return out;
}

}  // namespace conflow::genfunc
