#include "conflow/oscillator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "conflow/resonant.hpp"

namespace conflow::oscillator {

InteractionTensor InteractionTensor::build(std::size_t truncation,
                                           std::size_t max_truncation) {
    if (truncation > max_truncation)
        throw std::invalid_argument(
            "InteractionTensor: truncation exceeds the configured cap");
    InteractionTensor t;
    t.n_ = truncation;
    const long N = static_cast<long>(truncation);

    auto perm_count = [](const std::array<long, 3>& v) {
        // 3!/prod(multiplicity!)
        if (v[0] == v[1] && v[1] == v[2]) return 1.0;
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) return 3.0;
        return 6.0;
    };

    for (long a = 0; a < N; ++a)
        for (long b = a; b < N; ++b)
            for (long c = b; c < N; ++c)
                for (long d = c; d < N; ++d) {
                    const double s = static_cast<double>(
                        interaction_coefficient(a, b, c, d));
                    if (s == 0.0) continue;
                    const std::array<long, 4> q{a, b, c, d};

                    // quartic multiplicity 4!/prod(mult!)
                    double qmult = 24.0;
                    {
                        std::array<long, 4> v = q;
                        long run = 1;
                        for (int i = 1; i <= 3; ++i) {
                            if (v[i] == v[i - 1]) {
                                ++run;
                            } else {
                                for (long r = 2; r <= run; ++r) qmult /= r;
                                run = 1;
                            }
                        }
                        for (long r = 2; r <= run; ++r) qmult /= r;
                    }
                    t.quartic_.push_back({static_cast<std::uint32_t>(a),
                                          static_cast<std::uint32_t>(b),
                                          static_cast<std::uint32_t>(c),
                                          static_cast<std::uint32_t>(d),
                                          s * qmult});

                    // one cubic entry per distinct recipient value
                    for (int pos = 0; pos < 4; ++pos) {
                        if (pos > 0 && q[pos] == q[pos - 1]) continue;
                        std::array<long, 3> rest{};
                        int r = 0;
                        for (int i = 0; i < 4; ++i)
                            if (i != pos) rest[r++] = q[i];
                        t.cubic_.push_back({static_cast<std::uint32_t>(q[pos]),
                                            static_cast<std::uint32_t>(rest[0]),
                                            static_cast<std::uint32_t>(rest[1]),
                                            static_cast<std::uint32_t>(rest[2]),
                                            s * perm_count(rest)});
                    }
                }
    return t;
}

double InteractionTensor::value(long j, long k, long l, long n) const {
    return static_cast<double>(interaction_coefficient(j, k, l, n));
}

void InteractionTensor::accelerations(const std::vector<double>& c,
                                      std::vector<double>& acc) const {
    if (c.size() != n_)
        throw std::invalid_argument("accelerations: state size mismatch");
    acc.assign(n_, 0.0);
    for (const auto& e : cubic_)
        acc[e.n] -= e.w * c[e.i1] * c[e.i2] * c[e.i3];
    for (std::size_t n = 0; n < n_; ++n) {
        const double w = static_cast<double>(n + 1);
        acc[n] -= w * w * c[n];
    }
}

double InteractionTensor::energy(const std::vector<double>& c,
                                 const std::vector<double>& cdot) const {
    double e = 0.0;
    for (std::size_t n = 0; n < n_; ++n) {
        const double w = static_cast<double>(n + 1);
        e += 0.5 * cdot[n] * cdot[n] + 0.5 * w * w * c[n] * c[n];
    }
    for (const auto& q : quartic_)
        e += 0.25 * q.w * c[q.i1] * c[q.i2] * c[q.i3] * c[q.i4];
    return e;
}

CVec pack(const FieldState& fs) {
    CVec z(fs.c.size());
    for (std::size_t n = 0; n < fs.c.size(); ++n)
        z[n] = Complex(fs.c[n], fs.cdot[n]);
    return z;
}

FieldState unpack(const CVec& z, double epsilon) {
    FieldState fs;
    fs.epsilon = epsilon;
    fs.c.resize(z.size());
    fs.cdot.resize(z.size());
    for (std::size_t n = 0; n < z.size(); ++n) {
        fs.c[n] = z[n].real();
        fs.cdot[n] = z[n].imag();
    }
    return fs;
}

void first_order_rhs(const InteractionTensor& tensor, const CVec& z, CVec& dz) {
    thread_local std::vector<double> c, acc;
    c.resize(z.size());
    for (std::size_t n = 0; n < z.size(); ++n) c[n] = z[n].real();
    tensor.accelerations(c, acc);
    dz.resize(z.size());
    for (std::size_t n = 0; n < z.size(); ++n)
        dz[n] = Complex(z[n].imag(), acc[n]);
}

CVec to_envelope(const FieldState& fs, double t) {
    CVec beta(fs.c.size());
    for (std::size_t n = 0; n < fs.c.size(); ++n) {
        const double w = static_cast<double>(n + 1);
        beta[n] = 0.5 * Complex(fs.c[n], -fs.cdot[n] / w) *
                  std::polar(1.0, -w * t);
    }
    return beta;
}

FieldState from_envelope(const CVec& beta, double t) {
    FieldState fs;
    fs.c.resize(beta.size());
    fs.cdot.resize(beta.size());
    for (std::size_t n = 0; n < beta.size(); ++n) {
        const double w = static_cast<double>(n + 1);
        const Complex rot = beta[n] * std::polar(1.0, w * t);
        fs.c[n] = 2.0 * rot.real();
        fs.cdot[n] = -2.0 * w * rot.imag();
    }
    return fs;
}

void averaged_rhs_into(const CVec& alpha, CVec& out) {
    const long N = static_cast<long>(alpha.size());
    out.assign(alpha.size(), Complex(0));
    for (long n = 0; n < N; ++n) {
        Complex acc(0.0);
        for (long j = 0; j < N; ++j) {
            const long kmin = std::max<long>(0, n - j);
            const long kmax = std::min<long>(N - 1, n - j + N - 1);
            Complex inner(0.0);
            for (long k = kmin; k <= kmax; ++k) {
                const long l = j + k - n;
                const double w = static_cast<double>(
                    std::min(std::min(j, k), std::min(l, n)) + 1);
                inner += w * alpha[k] * std::conj(alpha[l]);
            }
            acc += alpha[j] * inner;
        }
        // 2 i (n+1) alpha' = -3 acc
        out[n] = Complex(0.0, 1.5) * acc / static_cast<double>(n + 1);
    }
}

AveragingReport validate_averaging(const ModeSpectrum& alpha0, double eps,
                                   double c_T, std::size_t N,
                                   const IntegratorConfig& cfg) {
    if (!(eps > 0.0 && eps <= 0.2))
        throw std::domain_error("validate_averaging: requires 0 < eps <= 0.2");
    if (alpha0.truncation() > N)
        throw std::invalid_argument("validate_averaging: alpha0 wider than N");
    {
        double tail = 0.0;
        for (std::size_t n = 3 * N / 4; n < alpha0.truncation(); ++n)
            tail += static_cast<double>((n + 1) * (n + 1)) * abs2(alpha0[n]);
        if (tail > 1e-10)
            throw std::invalid_argument(
                "validate_averaging: alpha0 spectral tail exceeds 1e-10");
    }

    const auto tensor = InteractionTensor::build(N);
    const double horizon = c_T / (eps * eps);
    constexpr std::size_t n_samples = 200;

    CVec beta0(N, Complex(0));
    for (std::size_t n = 0; n < alpha0.truncation(); ++n)
        beta0[n] = eps * alpha0[n];
    const FieldState fs0 = from_envelope(beta0, 0.0);

    IntegratorConfig fast_cfg = cfg;
    fast_cfg.sample_interval = horizon / static_cast<double>(n_samples);
    const Trajectory full = integrate(
        [&](double, const CVec& z, CVec& dz) { first_order_rhs(tensor, z, dz); },
        pack(fs0), horizon, fast_cfg);

    IntegratorConfig slow_cfg = cfg;
    slow_cfg.sample_interval = c_T / static_cast<double>(n_samples);
    CVec a0(N, Complex(0));
    for (std::size_t n = 0; n < alpha0.truncation(); ++n) a0[n] = alpha0[n];
    const Trajectory avg = integrate(
        [](double, const CVec& a, CVec& da) { averaged_rhs_into(a, da); },
        a0, c_T, slow_cfg);

    if (full.times.size() != avg.times.size())
        throw std::runtime_error("validate_averaging: sample grids diverged");

    AveragingReport rep;
    rep.eps = eps;
    rep.horizon = horizon;
    rep.samples = full.times.size();
    for (std::size_t i = 0; i < full.times.size(); ++i) {
        const double t = full.times[i];
        const CVec beta = to_envelope(unpack(full.states[i], eps), t);
        double total = 0.0, tail = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            rep.err_max = std::max(rep.err_max,
                                   std::abs(beta[n] - eps * avg.states[i][n]));
            const double m = abs2(beta[n]);
            total += m;
            if (n >= 3 * N / 4) tail += m;
        }
        if (total > 0.0)
            rep.tail_fraction = std::max(rep.tail_fraction, tail / total);
    }
    if (rep.tail_fraction > 1e-6)
        throw std::runtime_error(
            "validate_averaging: tail overflow, energy reached the truncation "
            "boundary");
    return rep;
}

std::vector<double> grid_evaluate_phi(const FieldState& fs,
                                      const std::vector<double>& xs) {
    std::vector<double> out(xs.size(), 0.0);
    const long N = static_cast<long>(fs.c.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double xi = std::cos(xs[i]);
        // Clenshaw for sum c_n U_n(xi)
        double y1 = 0.0, y2 = 0.0;
        for (long n = N - 1; n >= 0; --n) {
            const double y0 = fs.c[n] + 2.0 * xi * y1 - y2;
            y2 = y1;
            y1 = y0;
        }
        out[i] = y1;
    }
    return out;
}

std::vector<double> grid_evaluate_v(const FieldState& fs,
                                    const std::vector<double>& xs) {
    std::vector<double> out = grid_evaluate_phi(fs, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] *= std::sin(xs[i]);
    return out;
}

}  // namespace conflow::oscillator
