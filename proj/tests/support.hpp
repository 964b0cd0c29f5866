// Shared test oracles, independent of the library implementation paths they
// check:
//   - Gauss-Legendre quadrature of the interaction integral
//     (2/pi) Int_0^pi sin((j+1)x) sin((k+1)x) sin((l+1)x) sin((n+1)x) / sin^2 x
//   - a brute-force flow right-hand side enumerated over (j,k,l) with the
//     resonance condition j+k-l = n
//   - seeded random states.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "conflow/types.hpp"

namespace testsupport {

using conflow::Complex;
using conflow::CVec;

// ---- Gauss-Legendre nodes by Newton iteration on P_m --------------------

struct GaussLegendre {
    std::vector<double> nodes, weights;  // on [-1, 1]

    explicit GaussLegendre(int m) {
        nodes.resize(m);
        weights.resize(m);
        for (int i = 0; i < m; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

// (2/pi) times the interaction integral, composite 16-point Gauss-Legendre.
// Panel count grows with the top frequency so the rule stays spectrally
// exact for the index ranges used in tests.
inline double interaction_quadrature(int j, int k, int l, int n) {
    static const GaussLegendre gl(16);
    const int panels = 24 + 4 * std::max({j, k, l, n});
    const double h = std::numbers::pi / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double x0 = p * h;
        for (int q = 0; q < 16; ++q) {
            const double x = x0 + 0.5 * h * (gl.nodes[q] + 1.0);
            const double s = std::sin(x);
            const double f = std::sin((j + 1) * x) * std::sin((k + 1) * x) *
                             std::sin((l + 1) * x) * std::sin((n + 1) * x) /
                             (s * s);
            total += 0.5 * h * gl.weights[q] * f;
        }
    }
    return 2.0 / std::numbers::pi * total;
}

// Flow right-hand side by direct enumeration over (j, k, l) with the
// resonance condition j + k - l = n and S = min + 1 on the resonant set;
// structurally different from the library's (j, k) window loop.
inline CVec flow_rhs_oracle(const CVec& a) {
    const long N = static_cast<long>(a.size());
    CVec out(a.size(), Complex(0));
    for (long n = 0; n < N; ++n) {
        Complex acc(0);
        for (long j = 0; j < N; ++j)
            for (long k = 0; k < N; ++k)
                for (long l = 0; l < N; ++l) {
                    if (j + k - l != n) continue;
                    const double s = static_cast<double>(
                        std::min(std::min(j, k), std::min(l, n)) + 1);
                    // conj index is the one balancing the phases
                    acc += s * std::conj(a[l]) * a[j] * a[k];
                }
        out[n] = Complex(0.0, -1.0) * acc / static_cast<double>(n + 1);
    }
    return out;
}

inline CVec random_state(std::size_t n, double scale, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec v(n);
    for (auto& z : v) z = scale * Complex(u(rng), u(rng));
    return v;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs(const CVec& a) {
    double worst = 0.0;
    for (const auto& z : a) worst = std::max(worst, std::abs(z));
    return worst;
}

}  // namespace testsupport
