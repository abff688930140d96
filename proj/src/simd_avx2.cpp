#include "speclab/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SPECLAB_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace speclab::simd {

#ifdef SPECLAB_HAVE_AVX2
namespace {

#define SPECLAB_AVX2 __attribute__((target("avx2,fma")))

SPECLAB_AVX2 double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

SPECLAB_AVX2 double dotAvx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

SPECLAB_AVX2 void axpyAvx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

SPECLAB_AVX2 void rotateAvx2(double* x, double* y, double c, double s, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

SPECLAB_AVX2 void csrAvx2(const int* rowPtr, const int* cols, const double* vals,
                          const double* x, double* y, std::size_t rows) {
    for (std::size_t r = 0; r < rows; ++r) {
        int k = rowPtr[r];
        const int end = rowPtr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        for (; k + 4 <= end; k += 4) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
            const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, acc);
        }
        double s = hsum(acc);
        for (; k < end; ++k) s += vals[k] * x[cols[k]];
        y[r] = s;
    }
}

SPECLAB_AVX2 void classifyAvx2(const double* v, double a, double tol, std::int8_t* out,
                               std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vt = _mm256_set1_pd(tol);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), va);
        const __m256d nd = _mm256_sub_pd(zero, d);
        const __m256d up = _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_GT_OQ),
                                         _mm256_cmp_pd(d, vt, _CMP_GE_OQ));
        const __m256d dn = _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_LT_OQ),
                                         _mm256_cmp_pd(nd, vt, _CMP_GE_OQ));
        const int mu = _mm256_movemask_pd(up);
        const int md = _mm256_movemask_pd(dn);
        for (int l = 0; l < 4; ++l)
            out[i + l] = static_cast<std::int8_t>(((mu >> l) & 1) - ((md >> l) & 1));
    }
    for (; i < n; ++i) {
        const double d = v[i] - a;
        out[i] = (d > 0.0 && d >= tol) ? std::int8_t{1}
                 : (d < 0.0 && -d >= tol) ? std::int8_t{-1}
                                          : std::int8_t{0};
    }
}

}  // namespace

const KernelTable* avx2Kernels() {
    static const KernelTable table{dotAvx2, axpyAvx2, rotateAvx2, csrAvx2, classifyAvx2};
    return &table;
}

#else

const KernelTable* avx2Kernels() { return nullptr; }

#endif

}  // namespace speclab::simd
