// Internal power-of-two complex FFT helpers backed by FFTW, with cached
// plans.  Forward is unnormalized, backward carries the 1/L factor.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace conflow::detail {

std::size_t next_pow2(std::size_t n);

void fft_forward(std::vector<std::complex<double>>& buf);
void fft_backward(std::vector<std::complex<double>>& buf);

}  // namespace conflow::detail
