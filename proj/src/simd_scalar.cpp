#include "speclab/simd.hpp"

namespace speclab::simd {
namespace {

double dotScalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpyScalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rotateScalar(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void csrScalar(const int* rowPtr, const int* cols, const double* vals,
               const double* x, double* y, std::size_t rows) {
    for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (int k = rowPtr[r]; k < rowPtr[r + 1]; ++k) s += vals[k] * x[cols[k]];
        y[r] = s;
    }
}

void classifyScalar(const double* v, double a, double tol, std::int8_t* out,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v[i] - a;
        out[i] = (d > 0.0 && d >= tol) ? std::int8_t{1}
                 : (d < 0.0 && -d >= tol) ? std::int8_t{-1}
                                          : std::int8_t{0};
    }
}

}  // namespace

const KernelTable& scalarKernels() {
    static const KernelTable table{dotScalar, axpyScalar, rotateScalar, csrScalar,
                                   classifyScalar};
    return table;
}

}  // namespace speclab::simd
