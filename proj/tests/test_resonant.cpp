#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "conflow/resonant.hpp"
#include "support.hpp"

using namespace conflow;
using testsupport::flow_rhs_oracle;
using testsupport::interaction_quadrature;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::random_state;

TEST_CASE("interaction coefficient: pinned values") {
    CHECK(interaction_coefficient(0, 0, 0, 0) == 1);
    CHECK(interaction_coefficient(0, 0, 0, 2) == 0);  // n = j+k+l+2
    CHECK(interaction_coefficient(0, 0, 1, 1) == 1);
    CHECK(interaction_coefficient(0, 0, 0, 1) == 0);  // parity
    CHECK(interaction_coefficient(5, 1, 2, 4) == 2);
    CHECK_THROWS_AS(interaction_coefficient(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("interaction coefficient equals quadrature for indices <= 8") {
    for (int j = 0; j <= 8; ++j)
        for (int k = j; k <= 8; ++k)
            for (int l = k; l <= 8; ++l)
                for (int n = l; n <= 8; ++n) {
                    const double closed =
                        static_cast<double>(interaction_coefficient(j, k, l, n));
                    const double quad = interaction_quadrature(j, k, l, n);
                    CHECK(std::abs(closed - quad) <= 1e-8);
                }
}

TEST_CASE("interaction coefficient: full permutation symmetry") {
    for (int j = 0; j <= 6; ++j)
        for (int k = 0; k <= 6; ++k)
            for (int l = 0; l <= 6; ++l)
                for (int n = 0; n <= 6; ++n) {
                    std::array<int, 4> q{j, k, l, n};
                    std::sort(q.begin(), q.end());
                    const long ref =
                        interaction_coefficient(q[0], q[1], q[2], q[3]);
                    CHECK(interaction_coefficient(j, k, l, n) == ref);
                }
}

TEST_CASE("interaction coefficient on the resonant set is min+1") {
    for (int j = 0; j <= 10; ++j)
        for (int k = 0; k <= 10; ++k)
            for (int l = 0; l <= 10; ++l) {
                const int n = j + k - l;
                if (n < 0) continue;
                CHECK(interaction_coefficient(j, k, l, n) ==
                      std::min(std::min(j, k), std::min(l, n)) + 1);
                CHECK(interaction_coefficient(j, k, l, j + k + l + 2) == 0);
            }
}

TEST_CASE("flow rhs: one-mode state") {
    const Complex c(0.7, -0.4);
    ModeSpectrum s = ModeSpectrum::zero(6);
    s[3] = c;
    const ModeSpectrum d = flow_rhs(s);
    const Complex expected = Complex(0, -1) * abs2(c) * c;
    CHECK(std::abs(d[3] - expected) <= 1e-15);
    for (std::size_t n = 0; n < 6; ++n)
        if (n != 3) CHECK(std::abs(d[n]) == 0.0);
}

TEST_CASE("flow rhs: pinned two-mode values and zero state") {
    ModeSpectrum s(CVec{Complex(1), Complex(1)});
    const ModeSpectrum d = flow_rhs(s);
    CHECK(std::abs(d[0] - Complex(0, -3)) <= 1e-15);
    CHECK(std::abs(d[1] - Complex(0, -2)) <= 1e-15);

    const ModeSpectrum z = flow_rhs(ModeSpectrum::zero(5));
    CHECK(max_abs(z.amps) == 0.0);
}

TEST_CASE("flow rhs matches the (j,k,l)-enumeration oracle") {
    const CVec a = random_state(9, 0.8, 11);
    CVec d;
    flow_rhs_into(a, d);
    const CVec ref = flow_rhs_oracle(a);
    CHECK(max_abs_diff(d, ref) <= 1e-13 * std::max(1.0, max_abs(ref)));
}

TEST_CASE("flow rhs: cubic homogeneity") {
    const CVec a = random_state(12, 0.6, 21);
    CVec d, ds;
    flow_rhs_into(a, d);
    CVec scaled = a;
    for (auto& z : scaled) z *= 1.7;
    flow_rhs_into(scaled, ds);
    const double lam3 = 1.7 * 1.7 * 1.7;
    for (std::size_t n = 0; n < a.size(); ++n)
        CHECK(std::abs(ds[n] - lam3 * d[n]) <= 1e-13 * std::abs(ds[n]) + 1e-16);
}

TEST_CASE("hamiltonian: pinned values, reality and quartic homogeneity") {
    ModeSpectrum delta = ModeSpectrum::zero(4);
    delta[0] = Complex(1);
    CHECK(hamiltonian(delta) == doctest::Approx(1.0).epsilon(1e-14));

    ModeSpectrum ones(CVec{Complex(1), Complex(1)});
    CHECK(hamiltonian(ones) == doctest::Approx(7.0).epsilon(1e-14));

    CHECK(hamiltonian(ModeSpectrum::zero(4)) == 0.0);

    ModeSpectrum r(random_state(10, 0.9, 33));
    const double h = hamiltonian(r);
    ModeSpectrum r2 = apply_symmetry(r, 2.0, 0.0, 0.0);
    CHECK(hamiltonian(r2) == doctest::Approx(16.0 * h).epsilon(1e-12));
}

TEST_CASE("hamiltonian gradient: i(n+1) a' = d H / d conj(a) / 2") {
    ModeSpectrum s(random_state(6, 0.7, 44));
    const ModeSpectrum d = flow_rhs(s);
    const double step = 1e-5;
    for (std::size_t n = 0; n < s.truncation(); ++n) {
        ModeSpectrum probe = s;
        probe[n] = s[n] + Complex(step, 0);
        const double hxp = hamiltonian(probe);
        probe[n] = s[n] - Complex(step, 0);
        const double hxm = hamiltonian(probe);
        probe[n] = s[n] + Complex(0, step);
        const double hyp = hamiltonian(probe);
        probe[n] = s[n] - Complex(0, step);
        const double hym = hamiltonian(probe);
        const Complex grad(0.5 * (hxp - hxm) / (2 * step),
                           0.5 * (hyp - hym) / (2 * step));
        const Complex expected =
            2.0 * static_cast<double>(n + 1) * Complex(0, 1) * d[n];
        CHECK(std::abs(grad - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("charges: pinned values and quadratic scaling") {
    ModeSpectrum delta = ModeSpectrum::zero(3);
    delta[0] = Complex(1);
    ChargeSet c0 = charges(delta);
    CHECK(c0.Q == doctest::Approx(1.0));
    CHECK(c0.E == doctest::Approx(1.0));

    ModeSpectrum ones(CVec{Complex(1), Complex(1)});
    ChargeSet c1 = charges(ones);
    CHECK(c1.Q == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c1.E == doctest::Approx(5.0).epsilon(1e-15));

    ChargeSet c2 = charges(apply_symmetry(ones, 2.0, 0.3, 0.7));
    CHECK(c2.Q == doctest::Approx(4.0 * c1.Q).epsilon(1e-14));
    CHECK(c2.E == doctest::Approx(4.0 * c1.E).epsilon(1e-14));
}

TEST_CASE("charge gradients are orthogonal to the flow (no integration)") {
    for (unsigned seed : {1u, 2u, 3u}) {
        ModeSpectrum s(random_state(14, 0.7, seed));
        CVec d;
        flow_rhs_into(s.amps, d);
        double qdot = 0.0, edot = 0.0, scale = 0.0;
        for (std::size_t n = 0; n < s.truncation(); ++n) {
            const double w = static_cast<double>(n + 1);
            const double term = (std::conj(s[n]) * d[n]).real();
            qdot += 2.0 * w * term;
            edot += 2.0 * w * w * term;
            scale += w * w * std::abs(s[n]) * std::abs(d[n]);
        }
        CHECK(std::abs(qdot) <= 1e-13 * scale);
        CHECK(std::abs(edot) <= 1e-13 * scale);

        // directional derivative of H along the flow by central differences
        const double h = 1e-6;
        ModeSpectrum p = s, m = s;
        for (std::size_t n = 0; n < s.truncation(); ++n) {
            p[n] += h * d[n];
            m[n] -= h * d[n];
        }
        const double hdot = (hamiltonian(p) - hamiltonian(m)) / (2 * h);
        CHECK(std::abs(hdot) <= 1e-7 * std::max(1.0, std::abs(hamiltonian(s))));
    }
}

TEST_CASE("apply_symmetry: pinned examples and charge invariance") {
    ModeSpectrum delta = ModeSpectrum::zero(2);
    delta[0] = Complex(1);
    const ModeSpectrum flipped = apply_symmetry(delta, 1.0, std::numbers::pi, 0.0);
    CHECK(std::abs(flipped[0] - Complex(-1)) <= 1e-15);

    ModeSpectrum s(random_state(8, 0.8, 5));
    const ChargeSet before = charges(s);
    const ChargeSet after = charges(apply_symmetry(s, 1.0, 0.0, 1.3));
    CHECK(after.Q == doctest::Approx(before.Q).epsilon(1e-13));
    CHECK(after.E == doctest::Approx(before.E).epsilon(1e-13));
    CHECK(after.H == doctest::Approx(before.H).epsilon(1e-12));

    ModeSpectrum ones(CVec{Complex(1), Complex(1)});
    CHECK(hamiltonian(apply_symmetry(ones, 2.0, 0.0, 0.0)) ==
          doctest::Approx(112.0).epsilon(1e-13));
}

TEST_CASE("decimate: identity, one-mode image, equivariance, overflow") {
    ModeSpectrum s(random_state(5, 1.0, 7));
    const ModeSpectrum id = decimate(s, 0);
    CHECK(max_abs_diff(id.amps, s.amps) == 0.0);

    ModeSpectrum delta = ModeSpectrum::zero(1);
    delta[0] = Complex(0.8, 0.1);
    const ModeSpectrum d2 = decimate(delta, 2);
    CHECK(d2.truncation() == 3);
    CHECK(std::abs(d2[2] - delta[0]) == 0.0);
    // one-mode maps to one-mode with the same lambda = |c|^2
    const ModeSpectrum rhs2 = flow_rhs(d2);
    CHECK(std::abs(rhs2[2] - Complex(0, -1) * abs2(delta[0]) * delta[0]) <= 1e-15);

    ModeSpectrum two(random_state(2, 0.9, 9));
    const std::size_t N = 3;
    const ModeSpectrum dec = decimate(two, N);
    CVec lhs;
    flow_rhs_into(dec.amps, lhs);
    CVec inner;
    flow_rhs_into(two.amps, inner);
    const ModeSpectrum rhs = decimate(ModeSpectrum(inner), N);
    CHECK(max_abs_diff(lhs, rhs.amps) <= 1e-13 * std::max(1.0, max_abs(lhs)));

    CHECK_THROWS_AS(decimate(two, 2, 3), std::invalid_argument);
}

TEST_CASE("fast rhs path agrees with the reference to 1e-13 relative") {
    for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 64u}) {
        const CVec a = random_state(n, 0.9, 100 + static_cast<unsigned>(n));
        CVec ref, fast;
        flow_rhs_into(a, ref);
        flow_rhs_fast_into(a, fast);
        CHECK(max_abs_diff(ref, fast) <= 1e-13 * std::max(1.0, max_abs(ref)));
    }
}

TEST_CASE("fast hamiltonian agrees with the reference") {
    for (std::size_t n : {2u, 5u, 17u, 48u}) {
        ModeSpectrum s(random_state(n, 0.8, 200 + static_cast<unsigned>(n)));
        const double ref = hamiltonian(s);
        CHECK(hamiltonian_fast(s) ==
              doctest::Approx(ref).epsilon(1e-12).scale(std::max(1.0, std::abs(ref))));
    }
}
