#include "speclab/bessel.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclab {

double besselJSeries(int m, double x) {
    if (m < 0) throw std::invalid_argument("besselJ: m must be >= 0");
    const double h = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= m; ++k) term *= h / k;
    double sum = term;
    const double h2 = h * h;
    for (int k = 1; k < 500; ++k) {
        term *= -h2 / (static_cast<double>(k) * (k + m));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > h) break;
    }
    return sum;
}

double besselJ(int m, double x) {
    if (m < 0) throw std::invalid_argument("besselJ: m must be >= 0");
    if (x < 0.0) return (m % 2 ? -1.0 : 1.0) * besselJ(m, -x);
    if (x < 1.0) return besselJSeries(m, x);
    int start = 2 * ((std::max(m, static_cast<int>(x)) + 20 + static_cast<int>(std::sqrt(40.0 * std::max(m, static_cast<int>(x))))) / 2);
    double jp1 = 0.0, j = 1e-300, result = 0.0, norm = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm1 = 2.0 * k / x * j - jp1;
        jp1 = j;
        j = jm1;  // now J_{k-1}
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            result *= 1e-250;
            norm *= 1e-250;
        }
        if (k - 1 == m) result = j;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * j;
    }
    return result / norm;
}

double besselJPrime(int m, double x) {
    if (m == 0) return -besselJ(1, x);
    return 0.5 * (besselJ(m - 1, x) - besselJ(m + 1, x));
}

std::vector<double> besselJPrimeZeros(int m, int count) {
    if (m < 0 || count < 1) throw std::invalid_argument("besselJPrimeZeros: bad arguments");
    std::vector<double> zeros;
    if (m == 0) zeros.push_back(0.0);
    const double step = 0.05;
    // j'_{m,1} >= sqrt(m(m+2)) for m >= 1.
    double x = std::max(step, 0.9 * std::sqrt(m * (m + 2.0)));
    double f = besselJPrime(m, x);
    const double xMax = 10.0 * (m + count + 10);
    while (static_cast<int>(zeros.size()) < count) {
        const double xn = x + step;
        if (xn > xMax) throw SolverError("besselJPrimeZeros: bracketing failed for m = " + std::to_string(m));
        const double fn = besselJPrime(m, xn);
        if (f == 0.0) {
            zeros.push_back(x);
        } else if ((f < 0.0) != (fn < 0.0)) {
            double lo = x, hi = xn, flo = f;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = besselJPrime(m, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        x = xn;
        f = fn;
    }
    return zeros;
}

std::vector<DiskEigenvalue> diskNeumannReference(int count) {
    if (count < 1) throw std::invalid_argument("diskNeumannReference: count must be >= 1");
    // Every j'_{m,k} < X is collected (j'_{m,1} > m), so the list is complete below X^2.
    for (double X = 8.0;; X *= 1.5) {
        std::vector<DiskEigenvalue> all;
        for (int m = 0; m < X; ++m) {
            const auto z = besselJPrimeZeros(m, count + 2);
            for (std::size_t k = 0; k < z.size(); ++k) {
                if (z[k] >= X) break;
                const DiskEigenvalue e{z[k] * z[k], m, static_cast<int>(k) + 1};
                all.push_back(e);
                if (m >= 1) all.push_back(e);
            }
        }
        if (static_cast<int>(all.size()) < count) continue;
        std::stable_sort(all.begin(), all.end(), [](const DiskEigenvalue& a, const DiskEigenvalue& b) {
            return a.value < b.value || (a.value == b.value && a.m < b.m);
        });
        all.resize(count);
        return all;
    }
}

}  // namespace speclab
