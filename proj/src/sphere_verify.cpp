#include "speclab/sphere.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;

// |dg/dt| for g = 1/(t^2 - 1): the phase speed of v.
double phaseSpeed(double t) {
    const double d = t * t - 1.0;
    return 2.0 * std::abs(t) / (d * d);
}

// Smallest t in [0, 1) at which the phase speed of v reaches `speed`.
double phaseSpeedInverse(double speed) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phaseSpeed(mid) < speed ? lo : hi) = mid;
    }
    return lo;
}

// Second derivative in phi of cos(m phi) sampled on nphi columns, by FFT.
std::vector<double> azimuthalSecondDerivative(int m, std::size_t nphi) {
    std::vector<double> row(nphi);
    for (std::size_t j = 0; j < nphi; ++j) row[j] = std::cos(m * 2.0 * kPi * j / nphi);
    return secondDerivativePeriodic(row, 2.0 * kPi);
}

}  // namespace

std::vector<std::vector<double>> fornbergWeights(double x0, std::span<const double> xs, int maxDeriv) {
    const int n = static_cast<int>(xs.size());
    if (n == 0 || maxDeriv < 0) throw std::invalid_argument("fornbergWeights: empty stencil");
    std::vector<std::vector<double>> c(maxDeriv + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, maxDeriv);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

std::vector<double> applyKm(std::span<const double> f, double theta0, double h, int m, int order) {
    if (order < 2 || order % 2 != 0) throw std::invalid_argument("applyKm: order must be even and >= 2");
    const int n = static_cast<int>(f.size());
    const int width = order + 1;
    if (n < width + 1) throw std::invalid_argument("applyKm: too few samples");
    std::vector<double> out(n);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
        int lo = i - order / 2;
        int w = width;
        if (lo < 0 || lo + width > n) {
            w = width + 1;  // one-sided closures need an extra point
            lo = std::clamp(i - w / 2, 0, n - w);
        }
        xs.resize(w);
        for (int k = 0; k < w; ++k) xs[k] = static_cast<double>(lo + k - i);
        const auto c = fornbergWeights(0.0, xs, 2);
        double d1 = 0.0, d2 = 0.0;
        for (int k = 0; k < w; ++k) {
            d1 += c[1][k] * f[lo + k];
            d2 += c[2][k] * f[lo + k];
        }
        d1 /= h;
        d2 /= h * h;
        const double th = theta0 + i * h;
        const double s = std::sin(th), co = std::cos(th);
        out[i] = s * s * d2 + s * co * d1 + (m * (m + 1.0) * s * s - static_cast<double>(m) * m) * f[i];
    }
    return out;
}

SphereResidual sphereResidual(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi,
                              std::size_t maskNtheta, int order) {
    if (order < 2 || order % 2 != 0) throw std::invalid_argument("sphereResidual: order must be even and >= 2");
    if (ntheta < 16 || nphi < 16) throw std::invalid_argument("sphereResidual: grid too small");
    const int m = prof.params().m;
    if (2 * static_cast<std::size_t>(m) >= nphi) throw std::invalid_argument("sphereResidual: nphi too small for m");
    if (maskNtheta == 0) maskNtheta = ntheta;
    const double alpha = prof.params().alpha;
    const double eps = prof.eps();
    const double span = 1.25 * prof.delta();

    SphereResidual r;
    r.ntheta = ntheta;
    r.nphi = nphi;
    r.theta0 = kPi / 2 - span;
    r.theta1 = kPi / 2 + span;
    const double dth = (r.theta1 - r.theta0) / ntheta;
    const double dthMask = (r.theta1 - r.theta0) / maskNtheta;
    const double minCells = 32.0;

    // Rows whose features have fewer than minCells cells on the mask grid.
    const double uScale = alpha * eps;
    const double cornerWidth = 2.0 * prof.chi().width() * eps;
    const bool cornersResolved = cornerWidth / dthMask >= minCells;
    // Half-period of v in h is pi uScale / phaseSpeed(t).
    const double tFast = phaseSpeedInverse(kPi * uScale / (minCells * dthMask));
    const bool uResolved = 2.0 * uScale / dthMask >= minCells;
    auto masked = [&](double h) {
        const double a = std::abs(h);
        const double t = a / uScale;
        if (t < 1.0 + dthMask / uScale && (!uResolved || t >= tFast)) return true;
        const double te = a / eps;
        if (!cornersResolved) {
            const double pad = dthMask / eps;
            if (te >= prof.chi().corner0() - pad && te <= prof.chi().corner0() + 2.0 * prof.chi().width() + pad)
                return true;
            if (te >= prof.chi().corner1() - pad && te <= 1.0 + pad) return true;
        }
        return false;
    };

    auto W = [&](double th) { return prof.P(th - kPi / 2) + prof.u(th - kPi / 2); };
    const std::vector<double> d2phi = azimuthalSecondDerivative(m, nphi);
    std::vector<double> cosRow(nphi);
    for (std::size_t j = 0; j < nphi; ++j) cosRow[j] = std::cos(m * 2.0 * kPi * j / nphi);

    // Centred weights; W is analytic so the stencil may reach past the window.
    const int half = order / 2;
    std::vector<double> xs(2 * half + 1);
    for (int k = -half; k <= half; ++k) xs[k + half] = k;
    const auto c = fornbergWeights(0.0, xs, 2);

    double maxRes = 0.0, maxPhi = 0.0;
    for (std::size_t i = 0; i < ntheta; ++i) {
        const double th = r.theta0 + (i + 0.5) * dth;
        const double h = th - kPi / 2;
        const double s = std::sin(th);
        const double T = prof.T(h);
        maxPhi = std::max(maxPhi, std::abs(T));
        if (masked(h)) {
            ++r.maskedRows;
            continue;
        }
        double w0 = 0.0, d1 = 0.0, d2 = 0.0;
        for (int k = -half; k <= half; ++k) {
            const double wk = W(th + k * dth);
            if (k == 0) w0 = wk;
            d1 += c[1][k + half] * wk;
            d2 += c[2][k + half] * wk;
        }
        d1 /= dth;
        d2 /= dth * dth;
        const double lapTheta = d2 + std::cos(th) / s * d1;
        const double q = prof.Q(h);
        const double harmonic = std::pow(s, m);
        for (std::size_t j = 0; j < nphi; ++j) {
            // Laplacian of sin^m cos(m phi) is -m(m+1) sin^m cos(m phi).
            const double lap = -m * (m + 1.0) * harmonic * cosRow[j] + lapTheta * cosRow[j] +
                               w0 * d2phi[j] / (s * s);
            const double res = -lap - m * (m + 1.0) * q * T * cosRow[j];
            maxRes = std::max(maxRes, std::abs(res));
        }
    }
    r.residual = maxRes / maxPhi;
    r.maskedFraction = static_cast<double>(r.maskedRows) / ntheta;
    return r;
}

SphereVerification verifySphereEigen(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi,
                                     double tolerance) {
    const int m = prof.params().m;
    SphereVerification v;
    const int order = 4;
    v.coarse = sphereResidual(prof, ntheta / 2, nphi, ntheta / 4, order);
    v.fine = sphereResidual(prof, ntheta, nphi, ntheta / 4, order);
    v.observedOrder = std::log2(v.coarse.residual / v.fine.residual);
    v.residualPass = v.fine.residual < tolerance * m * (m + 1.0);
    v.orderPass = v.observedOrder >= order - 0.5;

    // Rayleigh sandwich: lambda_k(g) >= lambda_k(round) / max Q; the fifth
    // round eigenvalue is 6, so m(m+1) = 2 has labelling at most 4 when the
    // bound exceeds 2.
    double qMax = 1.0;
    const std::size_t scan = 1 << 16;
    for (std::size_t i = 0; i <= scan; ++i) {
        const double h = prof.delta() * (2.0 * i / scan - 1.0);
        qMax = std::max(qMax, prof.Q(h));
    }
    const double alpha = prof.params().alpha;
    v.labellingValue = 6.0 / qMax;
    v.labellingPass = m != 1 || (v.labellingValue >= (2.0 / 3.0) / (1.0 + 4.0 * alpha) * 6.0 &&
                                 v.labellingValue > 2.0);
    v.pass = v.residualPass && v.orderPass && v.labellingPass;
    return v;
}

double roundHarmonicResidual(int m, std::size_t ntheta, std::size_t nphi) {
    if (ntheta < 32 || nphi < 16 || 2 * static_cast<std::size_t>(m) >= nphi)
        throw std::invalid_argument("roundHarmonicResidual: grid too small");
    const double dth = kPi / ntheta;
    const std::vector<double> d2phi = azimuthalSecondDerivative(m, nphi);
    auto f = [&](double th) { return std::pow(std::sin(th), m); };
    const int half = 3;
    std::vector<double> xs(2 * half + 1);
    for (int k = -half; k <= half; ++k) xs[k + half] = k;
    const auto c = fornbergWeights(0.0, xs, 2);
    double maxRes = 0.0;
    // Same sixth-order stencil as applyKm, on the rows with sin(theta) >= sin(pi/4)
    // where the metric is well conditioned.
    for (std::size_t i = 0; i < ntheta; ++i) {
        const double th = (i + 0.5) * dth;
        const double s = std::sin(th);
        if (s < std::sqrt(0.5)) continue;
        double d1 = 0.0, d2 = 0.0;
        for (int k = -half; k <= half; ++k) {
            const double v = f(th + k * dth);
            d1 += c[1][k + half] * v;
            d2 += c[2][k + half] * v;
        }
        const double lapTheta = d2 / (dth * dth) + std::cos(th) / s * d1 / dth;
        for (std::size_t j = 0; j < nphi; ++j) {
            const double cj = std::cos(m * 2.0 * kPi * j / nphi);
            const double lap = lapTheta * cj + f(th) * d2phi[j] / (s * s);
            maxRes = std::max(maxRes, std::abs(-lap - m * (m + 1.0) * f(th) * cj));
        }
    }
    return maxRes / (m * (m + 1.0));
}

ScalarField2D sphereExcessBand(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi) {
    const double hp = prof.params().alpha * prof.eps();
    const int m = prof.params().m;
    return sampleSphereBand(
        ntheta, nphi, kPi / 2 - hp, kPi / 2 + hp,
        [&](double th, double ph) {
            const double s = std::sin(0.5 * m * ph);
            return prof.Tminus1(th - kPi / 2) * std::cos(m * ph) - 2.0 * s * s;
        },
        "sphere-excess");
}

SphereComponentCount sphereComponentCount(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi,
                                          double cellsPerHalfPeriod) {
    const double hp = prof.params().alpha * prof.eps();
    SphereComponentCount out;
    out.ntheta = ntheta;
    // Rows per unit t is ntheta / 2; a half-period in t is pi / phaseSpeed.
    out.resolvedT = phaseSpeedInverse(kPi * ntheta / (2.0 * cellsPerHalfPeriod));
    const ScalarField2D f = sphereExcessBand(prof, ntheta, nphi);
    NodalOptions opts;
    opts.relTolerance = 0.0;
    const Subregion sub{kPi / 2 - out.resolvedT * hp, kPi / 2 + out.resolvedT * hp, 0.0, 2.0 * kPi};
    out.count = componentCountInBand(f, 0.0, Side::above, sub, opts).componentCount;

    const auto& topo = std::get<SphereLatLong>(f.topology);
    bool inRun = false;
    for (std::size_t i = 0; i < ntheta; ++i) {
        const double t = (topo.theta(i) - kPi / 2) / hp;
        if (std::abs(t) > out.resolvedT) {
            inRun = false;
            continue;
        }
        const bool pos = oscillation(t).v > 0.0;
        if (pos && !inRun) ++out.oracleCount;
        inRun = pos;
    }
    return out;
}

}  // namespace speclab
