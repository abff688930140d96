#pragma once

#include <cstdint>
#include <span>

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// The variant is chosen once at startup from the CPU features; the
// SPECLAB_SIMD environment variable ("scalar" or "avx2") overrides it.
namespace speclab::simd {

enum class Level { scalar, avx2 };

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
    void (*csrMultiply)(const int* rowPtr, const int* cols, const double* vals,
                        const double* x, double* y, std::size_t rows);
    void (*classify)(const double* v, double a, double tol, std::int8_t* out,
                     std::size_t n);
};

const KernelTable& scalarKernels();
// Returns nullptr when the binary was built without AVX2 support.
const KernelTable* avx2Kernels();

bool avx2Supported();
Level activeLevel();
void setLevel(Level level);  // throws if the level is unsupported here
const char* levelName(Level level);

double dot(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// (x, y) <- (c x - s y, s x + c y)
void rotate(std::span<double> x, std::span<double> y, double c, double s);
// y = A x for a CSR matrix with rowPtr.size() - 1 rows
void csrMultiply(std::span<const int> rowPtr, std::span<const int> cols,
                 std::span<const double> vals, std::span<const double> x,
                 std::span<double> y);
// out[i] = +1 above a, -1 below a, 0 when |v - a| < tol or v == a
void classify(std::span<const double> v, double a, double tol,
              std::span<std::int8_t> out);

}  // namespace speclab::simd
