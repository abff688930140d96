#include "speclab/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace speclab::simd {
namespace {

bool cpuHasAvx2() {
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Level initialLevel() {
    const bool avx2 = avx2Supported();
    if (const char* env = std::getenv("SPECLAB_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar") return Level::scalar;
        if (want == "avx2" && avx2) return Level::avx2;
    }
    return avx2 ? Level::avx2 : Level::scalar;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{
        initialLevel() == Level::avx2 ? avx2Kernels() : &scalarKernels()};
    return table;
}

const KernelTable& k() { return *current().load(std::memory_order_relaxed); }

void requireSame(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("simd: length mismatch");
}

}  // namespace

bool avx2Supported() {
    static const bool ok = avx2Kernels() != nullptr && cpuHasAvx2();
    return ok;
}

Level activeLevel() {
    return current().load() == &scalarKernels() ? Level::scalar : Level::avx2;
}

void setLevel(Level level) {
    if (level == Level::avx2) {
        if (!avx2Supported()) throw std::runtime_error("simd: AVX2 not supported on this CPU");
        current().store(avx2Kernels());
    } else {
        current().store(&scalarKernels());
    }
}

const char* levelName(Level level) { return level == Level::avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b) {
    requireSame(a.size(), b.size());
    return k().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    requireSame(x.size(), y.size());
    k().axpy(alpha, x.data(), y.data(), x.size());
}

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
    requireSame(x.size(), y.size());
    k().rotate(x.data(), y.data(), c, s, x.size());
}

void csrMultiply(std::span<const int> rowPtr, std::span<const int> cols,
                 std::span<const double> vals, std::span<const double> x,
                 std::span<double> y) {
    if (rowPtr.empty()) return;
    requireSame(rowPtr.size() - 1, y.size());
    requireSame(cols.size(), vals.size());
    k().csrMultiply(rowPtr.data(), cols.data(), vals.data(), x.data(), y.data(), y.size());
}

void classify(std::span<const double> v, double a, double tol, std::span<std::int8_t> out) {
    requireSame(v.size(), out.size());
    k().classify(v.data(), a, tol, out.data(), v.size());
}

}  // namespace speclab::simd
