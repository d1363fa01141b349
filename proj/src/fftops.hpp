#pragma once

// Thin wrappers over FFTW3. Plan creation goes through a lock because the
// FFTW planner is not thread-safe; execution is.

#include <complex>
#include <cstddef>
#include <vector>

namespace edgeloc::fftops {

std::size_t next_pow2(std::size_t n);

// Complex transforms, any length. Inverse is scaled by 1/N.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

// Real input, one-sided output of length n/2+1; irfft takes the intended
// real length n (n may be odd).
std::vector<std::complex<double>> rfft(const std::vector<double>& x, std::size_t n = 0);
std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t n);

// Linear convolution via zero-padded FFT, output length |x| + |h| - 1.
std::vector<double> fftconv(const std::vector<double>& x, const std::vector<double>& h);

} // namespace edgeloc::fftops
