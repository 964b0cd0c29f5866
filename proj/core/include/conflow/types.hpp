// Core state types shared by all modules: truncated complex mode spectra and
// the conserved charges of the conformal flow.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace conflow {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

// Truncated spectral state (alpha_0 ... alpha_{N-1}).  The truncation is the
// length of the amplitude vector; operations never read indices >= N.
struct ModeSpectrum {
    CVec amps;

    ModeSpectrum() = default;
    explicit ModeSpectrum(CVec a) : amps(std::move(a)) {}

    static ModeSpectrum zero(std::size_t n) { return ModeSpectrum(CVec(n)); }

    std::size_t truncation() const { return amps.size(); }
    Complex& operator[](std::size_t n) { return amps[n]; }
    const Complex& operator[](std::size_t n) const { return amps[n]; }

    bool finite() const {
        for (const auto& a : amps)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        return true;
    }
};

// Conserved quantities of the flow: Q = sum (n+1)|alpha_n|^2,
// E = sum (n+1)^2 |alpha_n|^2, H the quartic Hamiltonian.
struct ChargeSet {
    double Q = 0.0;
    double E = 0.0;
    double H = 0.0;
};

inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace conflow
