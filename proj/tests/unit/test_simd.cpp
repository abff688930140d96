#include "doctest.h"
#include "support/oracles.hpp"

#include "speclab/simd.hpp"

#include <cmath>
#include <vector>

using namespace speclab;
using speclab::testing::Rng;

namespace {

std::vector<double> randomVector(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

// Every size from 0 through two AVX2 blocks plus remainder, then a few large.
std::vector<std::size_t> sizes() {
    std::vector<std::size_t> s;
    for (std::size_t n = 0; n <= 19; ++n) s.push_back(n);
    for (std::size_t n : {31u, 64u, 257u, 1000u, 4099u}) s.push_back(n);
    return s;
}

}  // namespace

TEST_CASE("level selection round-trips") {
    const simd::Level start = simd::activeLevel();
    simd::setLevel(simd::Level::scalar);
    CHECK(simd::activeLevel() == simd::Level::scalar);
    if (simd::avx2Supported()) {
        simd::setLevel(simd::Level::avx2);
        CHECK(simd::activeLevel() == simd::Level::avx2);
    } else {
        CHECK_THROWS(simd::setLevel(simd::Level::avx2));
    }
    simd::setLevel(start);
    CHECK(std::string(simd::levelName(simd::Level::scalar)) == "scalar");
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
    const simd::KernelTable* v = simd::avx2Kernels();
    if (!v || !simd::avx2Supported()) {
        MESSAGE("AVX2 unavailable; equivalence not exercised");
        return;
    }
    const simd::KernelTable& s = simd::scalarKernels();
    Rng rng(11);
    for (std::size_t n : sizes()) {
        CAPTURE(n);
        const auto a = randomVector(rng, n), b = randomVector(rng, n);

        // Summation order differs, so allow rounding of order n * eps * sum |a b|.
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
        CHECK(std::abs(s.dot(a.data(), b.data(), n) - v->dot(a.data(), b.data(), n)) <=
              4.0 * (n + 1) * 2.3e-16 * mag);

        auto y1 = b, y2 = b;
        s.axpy(0.37, a.data(), y1.data(), n);
        v->axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 4e-16);

        auto x1 = a, x2 = a, z1 = b, z2 = b;
        const double c = std::cos(0.3), sn = std::sin(0.3);
        s.rotate(x1.data(), z1.data(), c, sn, n);
        v->rotate(x2.data(), z2.data(), c, sn, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(x1[i] - x2[i]) <= 4e-16);
            CHECK(std::abs(z1[i] - z2[i]) <= 4e-16);
        }

        // Values exactly at the level and at the band edge must classify identically.
        auto w = a;
        for (std::size_t i = 0; i < n; i += 3) w[i] = 0.25;
        for (std::size_t i = 1; i < n; i += 5) w[i] = 0.25 + 1e-3;
        std::vector<std::int8_t> o1(n), o2(n);
        s.classify(w.data(), 0.25, 1e-3, o1.data(), n);
        v->classify(w.data(), 0.25, 1e-3, o2.data(), n);
        CHECK(o1 == o2);
        s.classify(w.data(), 0.25, 0.0, o1.data(), n);
        v->classify(w.data(), 0.25, 0.0, o2.data(), n);
        CHECK(o1 == o2);
    }
}

TEST_CASE("CSR multiply agrees across kernels on random sparse matrices") {
    const simd::KernelTable* v = simd::avx2Kernels();
    if (!v || !simd::avx2Supported()) return;
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = static_cast<std::size_t>(rng.integer(1, 300));
        std::vector<int> rowPtr{0}, cols;
        std::vector<double> vals;
        for (std::size_t r = 0; r < rows; ++r) {
            const int nnz = rng.integer(0, 13);
            for (int k = 0; k < nnz; ++k) {
                cols.push_back(rng.integer(0, static_cast<int>(rows) - 1));
                vals.push_back(rng.uniform(-2.0, 2.0));
            }
            rowPtr.push_back(static_cast<int>(cols.size()));
        }
        const auto x = randomVector(rng, rows);
        std::vector<double> y1(rows), y2(rows);
        simd::scalarKernels().csrMultiply(rowPtr.data(), cols.data(), vals.data(), x.data(), y1.data(), rows);
        v->csrMultiply(rowPtr.data(), cols.data(), vals.data(), x.data(), y2.data(), rows);
        for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(y1[r] - y2[r]) <= 1e-14);
    }
}

TEST_CASE("span wrappers check lengths and follow the active table") {
    std::vector<double> a{1, 2, 3}, b{4, 5, 6}, c{1, 2};
    CHECK(simd::dot(a, b) == 32.0);
    CHECK_THROWS(simd::dot(a, c));
    simd::axpy(2.0, a, b);
    CHECK(b == std::vector<double>{6, 9, 12});
    std::vector<std::int8_t> out(3);
    simd::classify(a, 2.0, 0.0, out);
    CHECK(out == std::vector<std::int8_t>{-1, 0, 1});
}
