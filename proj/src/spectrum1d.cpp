#include "speclab/spectrum1d.hpp"

#include "speclab/error.hpp"
#include "speclab/fields.hpp"
#include "speclab/parallel.hpp"
#include "speclab/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;

double maxAbs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Orthonormal basis of the parity subspace, one column per entry: each
// column is a list of (node, weight).
struct SparseColumn {
    std::size_t i0, i1;
    double w0, w1;
};

std::vector<SparseColumn> parityBasis(std::size_t n, Parity p) {
    std::vector<SparseColumn> cols;
    const double r = 1.0 / std::sqrt(2.0);
    if (p == Parity::none) {
        for (std::size_t j = 0; j < n; ++j) cols.push_back({j, j, 1.0, 0.0});
    } else if (p == Parity::even) {
        cols.push_back({0, 0, 1.0, 0.0});
        for (std::size_t j = 1; j < n / 2; ++j) cols.push_back({j, n - j, r, r});
        cols.push_back({n / 2, n / 2, 1.0, 0.0});
    } else {
        for (std::size_t j = 1; j < n / 2; ++j) cols.push_back({j, n - j, r, -r});
    }
    return cols;
}

}  // namespace

std::string parityName(Parity p) {
    switch (p) {
        case Parity::none: return "none";
        case Parity::even: return "even";
        case Parity::odd: return "odd";
    }
    return "?";
}

std::vector<double> spectralSecondDerivativeMatrix(std::size_t n) {
    if (n < 4 || n % 2) throw std::invalid_argument("spectral matrix: n must be even and >= 4");
    const double h = 2.0 * kPi / static_cast<double>(n);
    std::vector<double> row(n);
    for (std::size_t d = 1; d < n; ++d) {
        const double s = std::sin(0.5 * static_cast<double>(d) * h);
        row[d] = (d % 2 ? 0.5 : -0.5) / (s * s);
    }
    // The diagonal equals -n^2/12 - 1/6 analytically; taking minus the row sum
    // keeps constants in the kernel to rounding and removes a uniform shift.
    double sum = 0.0;
    for (std::size_t d = 1; d < n / 2; ++d) sum += row[d] + row[n - d];
    row[0] = -(sum + row[n / 2]);
    std::vector<double> D(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) D[j * n + l] = row[(j + n - l) % n];
    return D;
}

std::vector<SpectralPair> solveSturm(std::span<const double> Q, int k, std::size_t count, Parity parity) {
    const std::size_t n = Q.size();
    if (n < 8 || n % 2) throw std::invalid_argument("solveSturm: grid size must be even and >= 8");
    if (count == 0 || count > n / 4) throw std::invalid_argument("solveSturm: count must be in [1, n/4]");
    double qmin = Q[0];
    std::size_t qarg = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (Q[j] < qmin) {
            qmin = Q[j];
            qarg = j;
        }
    if (!(qmin > 0.0))
        throw ConstructionError("weight not positive: min Q = " + std::to_string(qmin) + " at node " +
                                std::to_string(qarg));
    if (parity != Parity::none) {
        const double tol = 1e-12 * maxAbs(Q);
        for (std::size_t j = 1; j < n; ++j)
            if (std::abs(Q[j] - Q[n - j]) > tol)
                throw std::invalid_argument("solveSturm: parity restriction needs Q even about 0");
    }
    const std::vector<double> D = spectralSecondDerivativeMatrix(n);
    std::vector<double> rs(n);
    for (std::size_t j = 0; j < n; ++j) rs[j] = 1.0 / std::sqrt(Q[j]);
    const double k2 = static_cast<double>(k) * k;
    auto B = [&](std::size_t i, std::size_t j) {
        return rs[i] * (-D[i * n + j] + (i == j ? k2 : 0.0)) * rs[j];
    };
    const std::vector<SparseColumn> basis = parityBasis(n, parity);
    const std::size_t m = basis.size();
    if (count > m) throw std::invalid_argument("solveSturm: count exceeds subspace dimension");
    std::vector<double> P(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            const SparseColumn& ca = basis[a];
            const SparseColumn& cb = basis[b];
            double v = ca.w0 * cb.w0 * B(ca.i0, cb.i0);
            if (cb.w1 != 0.0) v += ca.w0 * cb.w1 * B(ca.i0, cb.i1);
            if (ca.w1 != 0.0) v += ca.w1 * cb.w0 * B(ca.i1, cb.i0);
            if (ca.w1 != 0.0 && cb.w1 != 0.0) v += ca.w1 * cb.w1 * B(ca.i1, cb.i1);
            P[a * m + b] = P[b * m + a] = v;
        }
    const SymmetricEigen es = symmetricEigen(P, m, true);
    double qsum = 0.0;
    for (double q : Q) qsum += q;
    std::vector<SpectralPair> out;
    for (std::size_t t = 0; t < count; ++t) {
        SpectralPair sp;
        sp.value = es.values[t];
        sp.k = k;
        sp.parity = parity;
        sp.index = static_cast<int>(t) + 1;
        std::vector<double> w(n, 0.0);
        const auto z = es.vector(t);
        for (std::size_t a = 0; a < m; ++a) {
            w[basis[a].i0] += basis[a].w0 * z[a];
            if (basis[a].w1 != 0.0) w[basis[a].i1] += basis[a].w1 * z[a];
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            w[j] *= rs[j];
            norm += Q[j] * w[j] * w[j];
        }
        const double scale = std::sqrt(qsum / norm);
        for (double& x : w) x *= scale;
        const double umax = maxAbs(w);
        for (double x : w)
            if (std::abs(x) > 1e-8 * umax) {
                if (x < 0.0)
                    for (double& y : w) y = -y;
                break;
            }
        const std::vector<double> upp = secondDerivativePeriodic(w, 2.0 * kPi);
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            r = std::max(r, std::abs(-upp[j] + k2 * w[j] - sp.value * Q[j] * w[j]));
        sp.residual = r / (umax * std::max(sp.value, 1.0));
        if (!(sp.residual < 1e-8))
            throw GuardViolation("solveSturm: residual " + std::to_string(sp.residual) + " for pair " +
                                 std::to_string(t));
        sp.vector = std::move(w);
        out.push_back(std::move(sp));
    }
    return out;
}

std::vector<std::vector<std::size_t>> multiplicityBlocks(std::span<const double> values, double tol) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (blocks.empty() || !(std::abs(values[i] - values[blocks.back().back()]) < tol))
            blocks.push_back({});
        blocks.back().push_back(i);
    }
    return blocks;
}

std::vector<SpectralPair> torusSpectrum(std::span<const double> Q, int kmax, std::size_t count) {
    if (kmax < 0) throw std::invalid_argument("torusSpectrum: kmax must be >= 0");
    std::vector<std::vector<SpectralPair>> perK(static_cast<std::size_t>(kmax) + 1);
    parallelFor(perK.size(), [&](std::size_t k) {
        perK[k] = solveSturm(Q, static_cast<int>(k), std::min(count + 1, Q.size() / 4), Parity::none);
    });
    std::vector<SpectralPair> all;
    for (std::size_t k = 0; k < perK.size(); ++k)
        for (const SpectralPair& p : perK[k]) {
            all.push_back(p);
            if (k >= 1) {
                all.push_back(p);
                all.back().ySector = 1;
            }
        }
    std::stable_sort(all.begin(), all.end(), [](const SpectralPair& a, const SpectralPair& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.k != b.k) return a.k < b.k;
        if (a.parity != b.parity) return a.parity < b.parity;
        if (a.index != b.index) return a.index < b.index;
        return a.ySector < b.ySector;
    });
    const double qmax = *std::max_element(Q.begin(), Q.end());
    const double bound = static_cast<double>(kmax + 1) * (kmax + 1) / qmax;
    if (all.size() <= count || !(all[count].value < bound))
        throw GuardViolation("torusSpectrum: raise kmax, entry " + std::to_string(count + 1) +
                             " is not below (kmax+1)^2/max Q = " + std::to_string(bound));
    all.resize(count);
    return all;
}

double PerturbationCoefficients::p(double x) const {
    const double nn = n;
    return 0.5 * nn * (std::cos((nn + 1) * x) / (nn + 2) + std::cos((nn - 1) * x) / (nn - 2));
}

double PerturbationCoefficients::q(double x) const {
    const double nn = n;
    return 0.5 * nn * (std::sin((nn + 1) * x) / (nn + 2) - std::sin((nn - 1) * x) / (nn - 2));
}

PerturbationCoefficients perturbationCoefficients(int n) {
    if (n < 3) throw std::invalid_argument("perturbationCoefficients: n must be >= 3");
    PerturbationCoefficients c;
    c.n = n;
    const double n2 = static_cast<double>(n) * n;
    c.An = 0.5 * kPi * (-4.0 / (n2 - 4.0));
    c.sigma2 = c.tau2 = -2.0 * n2 / (n2 - 4.0);
    // Trapezoid rule over one period is exact for these trigonometric polynomials.
    const std::size_t N = 16 * static_cast<std::size_t>(n) + 64;
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double x = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(N);
        const double cn = std::cos(n * x);
        a += cn * cn * std::cos(x) * std::cos(x) - cn * c.p(x) * std::cos(x);
        b += cn * cn * std::sin(x) * std::sin(x) - cn * c.q(x) * std::sin(x);
    }
    c.AnQuadrature = a * 2.0 * kPi / static_cast<double>(N);
    c.BnQuadrature = b * 2.0 * kPi / static_cast<double>(N);
    c.trace = {
        "order a: -u1'' = u1 + sigma1 cos x + n^2 cos(nx) cos x; pairing with cos x gives sigma1 = 0",
        "u1 = p = (n/2)[cos((n+1)x)/(n+2) + cos((n-1)x)/(n-2)]",
        "order a^2 paired with cos x: sigma2 pi = n^2 A_n",
        "A_n = int cos^2(nx)cos^2 x - int cos(nx) p cos x = pi/2 - (pi/2) n^2/(n^2-4)",
        "(2/pi) A_n = -4/(n^2-4) = " + std::to_string(2.0 / kPi * c.An),
        "sigma2 = -2 n^2/(n^2-4) = " + std::to_string(c.sigma2),
        "odd sector with q = (n/2)[sin((n+1)x)/(n+2) - sin((n-1)x)/(n-2)] gives B_n = A_n, tau2 = sigma2",
    };
    return c;
}

std::vector<double> weightQa(int n, double a, std::size_t N) {
    std::vector<double> Q(N);
    const double n2 = static_cast<double>(n) * n;
    for (std::size_t j = 0; j < N; ++j) {
        const std::size_t kk = (static_cast<std::size_t>(n) * j) % N;
        const double cs = std::cos(2.0 * kPi * static_cast<double>(std::min(kk, N - kk)) / static_cast<double>(N));
        Q[j] = 1.0 + a * n2 * cs / (1.0 + a * cs);
    }
    return Q;
}

PerturbationCheck verifyPerturbation(int n, std::span<const double> aList, std::size_t grid) {
    if (aList.size() < 3) throw std::invalid_argument("verifyPerturbation: need at least three amplitudes");
    PerturbationCheck r;
    r.n = n;
    r.aList.assign(aList.begin(), aList.end());
    r.expected = perturbationCoefficients(n).sigma2;
    for (double a : aList) {
        const std::vector<double> Q = weightQa(n, a, grid);
        r.sigma.push_back(solveSturm(Q, 0, 2, Parity::even)[1].value);
        r.tau.push_back(solveSturm(Q, 0, 1, Parity::odd)[0].value);
    }
    // Quadratic through the last three (a, g(a)) points, evaluated at 0.
    auto extrapolate = [&](const std::vector<double>& vals) {
        const std::size_t s = aList.size() - 3;
        double x[3], g[3];
        for (int i = 0; i < 3; ++i) {
            x[i] = aList[s + i];
            g[i] = (vals[s + i] - 1.0) / (x[i] * x[i]);
        }
        double v = 0.0;
        for (int i = 0; i < 3; ++i) {
            double l = 1.0;
            for (int j = 0; j < 3; ++j)
                if (j != i) l *= (0.0 - x[j]) / (x[i] - x[j]);
            v += g[i] * l;
        }
        return v;
    };
    r.sigma2Fit = extrapolate(r.sigma);
    r.tau2Fit = extrapolate(r.tau);
    r.sigmaRelErr = std::abs(r.sigma2Fit - r.expected) / std::abs(r.expected);
    r.tauRelErr = std::abs(r.tau2Fit - r.expected) / std::abs(r.expected);
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < aList.size(); ++i)
        if (aList[i] < aList[smallest]) smallest = i;
    r.splitAtSmallest = std::abs(r.tau[smallest] - r.sigma[smallest]);
    r.pass = r.sigmaRelErr < 0.02 && r.tauRelErr < 0.02;
    return r;
}

}  // namespace speclab
