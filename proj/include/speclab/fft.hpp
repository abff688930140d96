#pragma once

#include <complex>
#include <span>
#include <vector>

namespace speclab {

bool isPowerOfTwo(std::size_t n);

// In-place iterative radix-2 FFT; size must be a power of two.
// Forward uses exp(-2 pi i jk / n); the inverse includes the 1/n factor.
void fftRadix2(std::vector<std::complex<double>>& a, bool inverse);

// Direct O(n^2) transform with the same conventions, any size.
std::vector<std::complex<double>> dftDirect(std::span<const std::complex<double>> a,
                                            bool inverse);

// Chooses the radix-2 path when possible, the direct transform otherwise.
void fft(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace speclab
