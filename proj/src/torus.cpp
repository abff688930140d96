#include "speclab/torus.hpp"

#include "speclab/error.hpp"
#include "speclab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;

double expInv(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double smoothStep(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = expInv(s);
    const double b = expInv(1.0 - s);
    return a / (a + b);
}

// cos(2 pi k / N) with k reduced so that k and N - k give identical results.
double cosIndex(std::size_t k, std::size_t N) {
    k %= N;
    const std::size_t r = std::min(k, N - k);
    return std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(N));
}

// |x| of node j on a 2 pi periodic grid, reduced to [0, pi] symmetrically.
double absNode(std::size_t j, std::size_t N) {
    const std::size_t r = std::min(j % N, N - j % N);
    return 2.0 * kPi * static_cast<double>(r) / static_cast<double>(N);
}

std::size_t scanSizeFor(std::size_t resolution) {
    std::size_t s = std::size_t{1} << 14;
    while (s < 64 * resolution) s <<= 1;
    return s;
}

void certify(TorusConstruction& c) {
    c.minQ = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.Q.size(); ++j) {
        if (c.Q[j] < c.minQ) {
            c.minQ = c.Q[j];
            c.argminQ = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(c.Q.size());
        }
    }
}

}  // namespace

double bumpPlateau(double x, double r1, double r2) {
    return smoothStep((r2 - std::abs(x)) / (r2 - r1));
}

double psi1(double x) {
    if (x == 0.0) return 0.0;
    const double phi = bumpPlateau(x);
    const double s = 1.0 / (x * x);
    return phi * std::exp(-s) * std::cos(s) + (1.0 - phi);
}

double psi0(double x) {
    const double r = std::remainder(x, 2.0 * kPi);  // in [-pi, pi]
    return psi1(r);
}

double defaultAmplitude(int n) { return 0.75 / (static_cast<double>(n) * n + 1.0); }

TorusConstruction buildExample1(std::size_t resolution, std::optional<int> m) {
    if (resolution < 8 || !isPowerOfTwo(resolution))
        throw std::invalid_argument("example1: resolution must be a power of two >= 8");
    TorusConstruction c;
    c.kind = "example1";
    c.resolution = resolution;
    c.scanResolution = scanSizeFor(resolution);
    const std::size_t N = c.scanResolution;
    c.F.resize(N);
    for (std::size_t j = 0; j < N; ++j) c.F[j] = 1.0 + 0.5 * psi1(absNode(j, N));
    c.Fpp = secondDerivativePeriodic(c.F, 2.0 * kPi);
    c.supFppOverF = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < N; ++j) c.supFppOverF = std::max(c.supFppOverF, c.Fpp[j] / c.F[j]);
    auto weight = [&](int mm) {
        c.m = mm;
        c.Q.resize(N);
        const double m2 = static_cast<double>(mm) * mm;
        for (std::size_t j = 0; j < N; ++j) c.Q[j] = 1.0 - c.Fpp[j] / (m2 * c.F[j]);
        certify(c);
    };
    if (m) {
        if (*m < 1) throw std::invalid_argument("example1: m must be positive");
        weight(*m);
        if (!(c.minQ > 0.0))
            throw ConstructionError("example1: m = " + std::to_string(*m) +
                                    " too small, need m^2 > sup F''/F = " + std::to_string(c.supFppOverF));
        return c;
    }
    for (int mm = 1; mm <= (1 << 20); mm *= 2) {
        weight(mm);
        if (c.minQ > 0.0) return c;
    }
    throw ConstructionError("example1: no admissible m found, sup F''/F = " + std::to_string(c.supFppOverF));
}

TorusConstruction buildExample2(int n, double a, std::size_t resolution) {
    if (n < 3) throw std::invalid_argument("example2: n must be at least 3");
    if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("example2: need 0 <= a < 1");
    if (resolution < 8) throw std::invalid_argument("example2: resolution too small");
    TorusConstruction c;
    c.kind = "example2";
    c.m = 1;
    c.n = n;
    c.a = a;
    c.resolution = resolution;
    c.scanResolution = 64 * resolution;
    const std::size_t N = c.scanResolution;
    const double n2 = static_cast<double>(n) * n;
    c.F.resize(N);
    c.Fpp.resize(N);
    c.Q.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double cs = cosIndex(static_cast<std::size_t>(n) * j, N);
        c.F[j] = 1.0 + a * cs;
        c.Fpp[j] = -a * n2 * cs;
        c.Q[j] = 1.0 + a * n2 * cs / (1.0 + a * cs);
    }
    certify(c);
    c.supFppOverF = a * n2 / (1.0 - a);
    if (!(c.minQ > 0.0))
        throw ConstructionError("example2: weight not positive, min Q_a = " + std::to_string(c.minQ) +
                                " at x = " + std::to_string(c.argminQ));
    return c;
}

std::vector<double> sampleF(const TorusConstruction& c, std::size_t nx) {
    std::vector<double> out(nx);
    if (c.kind == "example2") {
        for (std::size_t j = 0; j < nx; ++j) out[j] = 1.0 + c.a * cosIndex(static_cast<std::size_t>(c.n) * j, nx);
        return out;
    }
    for (std::size_t j = 0; j < nx; ++j) out[j] = 1.0 + 0.5 * psi1(absNode(j, nx));
    return out;
}

std::vector<double> sampleQ(const TorusConstruction& c, std::size_t nx) {
    std::vector<double> out(nx);
    if (c.kind == "example2") {
        const double n2 = static_cast<double>(c.n) * c.n;
        for (std::size_t j = 0; j < nx; ++j) {
            const double cs = cosIndex(static_cast<std::size_t>(c.n) * j, nx);
            out[j] = 1.0 + c.a * n2 * cs / (1.0 + c.a * cs);
        }
        return out;
    }
    if (nx == 0 || c.scanResolution % nx != 0)
        throw std::invalid_argument("sampleQ: grid must divide the scan resolution");
    const std::size_t step = c.scanResolution / nx;
    for (std::size_t j = 0; j < nx; ++j) out[j] = c.Q[j * step];
    return out;
}

ScalarField2D phiField(const TorusConstruction& c, std::size_t nx, std::size_t ny) {
    const std::vector<double> F = sampleF(c, nx);
    ScalarField2D f{TorusPeriodic{nx, ny}, std::vector<double>(nx * ny), "Phi_" + c.kind};
    std::vector<double> cy(ny);
    for (std::size_t j = 0; j < ny; ++j) cy[j] = cosIndex(static_cast<std::size_t>(c.m) * j, ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) f.values[i * ny + j] = F[i] * cy[j];
    return f;
}

ScalarField2D phiExcessField(const TorusConstruction& c, std::size_t nx, std::size_t ny) {
    std::vector<double> Fm1(nx);
    if (c.kind == "example2") {
        for (std::size_t j = 0; j < nx; ++j) Fm1[j] = c.a * cosIndex(static_cast<std::size_t>(c.n) * j, nx);
    } else {
        for (std::size_t j = 0; j < nx; ++j) Fm1[j] = 0.5 * psi1(absNode(j, nx));
    }
    ScalarField2D f{TorusPeriodic{nx, ny}, std::vector<double>(nx * ny), "Phi-1_" + c.kind};
    for (std::size_t j = 0; j < ny; ++j) {
        const std::size_t k = (static_cast<std::size_t>(c.m) * j) % ny;
        const double ang = 2.0 * kPi * static_cast<double>(std::min(k, ny - k)) / static_cast<double>(ny);
        const double cy = std::cos(ang);
        const double s = std::sin(0.5 * ang);
        for (std::size_t i = 0; i < nx; ++i) f.values[i * ny + j] = Fm1[i] * cy - 2.0 * s * s;
    }
    return f;
}

double torusEigenResidual(const TorusConstruction& c, std::size_t nx, std::size_t ny) {
    const ScalarField2D phi = phiField(c, nx, ny);
    const std::vector<double> Q = sampleQ(c, nx);
    std::vector<double> lap(nx * ny, 0.0);
    std::vector<double> line(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) line[i] = phi.values[i * ny + j];
        const std::vector<double> d2 = secondDerivativePeriodic(line, 2.0 * kPi);
        for (std::size_t i = 0; i < nx; ++i) lap[i * ny + j] += d2[i];
    }
    for (std::size_t i = 0; i < nx; ++i) {
        const std::span<const double> row{phi.values.data() + i * ny, ny};
        const std::vector<double> d2 = secondDerivativePeriodic(row, 2.0 * kPi);
        for (std::size_t j = 0; j < ny; ++j) lap[i * ny + j] += d2[j];
    }
    const double m2 = static_cast<double>(c.m) * c.m;
    double worst = 0.0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            worst = std::max(worst, std::abs(lap[i * ny + j] + m2 * Q[i] * phi.values[i * ny + j]));
    return worst / m2;
}

}  // namespace speclab
