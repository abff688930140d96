#include "speclab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace speclab {

bool isPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fftRadix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!isPowerOfTwo(n)) throw std::invalid_argument("fftRadix2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // Twiddles from direct cos/sin per index keep the error O(eps log n).
        std::vector<std::complex<double>> w(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(len);
            w[k] = {std::cos(ang), std::sin(ang)};
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + half] * w[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<std::complex<double>> dftDirect(std::span<const std::complex<double>> a,
                                            bool inverse) {
    const std::size_t n = a.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jk = (j * k) % n;
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(jk) /
                               static_cast<double>(n);
            s += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? s / static_cast<double>(n) : s;
    }
    return out;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    if (isPowerOfTwo(a.size()))
        fftRadix2(a, inverse);
    else
        a = dftDirect(a, inverse);
}

}  // namespace speclab
