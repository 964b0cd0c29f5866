#include "fft_util.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace conflow::detail {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// Plans are created once per (size, direction) with FFTW_UNALIGNED so they
// can be executed on any caller buffer.  Plan creation is not thread-safe in
// FFTW; execution is.
std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan plan_for(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plan_cache.emplace(key, p);
    return p;
}

void execute(std::vector<std::complex<double>>& buf, int sign) {
    if (buf.empty() || (buf.size() & (buf.size() - 1)) != 0)
        throw std::invalid_argument("fft size must be a power of two");
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan_for(buf.size(), sign), ptr, ptr);
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& buf) {
    execute(buf, FFTW_FORWARD);
}

void fft_backward(std::vector<std::complex<double>>& buf) {
    execute(buf, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(buf.size());
    for (auto& z : buf) z *= inv;
}

}  // namespace conflow::detail
