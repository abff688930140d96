#include "speclab/symmetric_eigen.hpp"

#include "speclab/error.hpp"
#include "speclab/simd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace speclab {
namespace {

// QL iterations on (d, e) with e[i] coupling i and i+1. When zt is non-empty
// it holds n rows that receive the same plane rotations.
void qlImplicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& zt) {
    const std::size_t n = d.size();
    const bool vectors = !zt.empty();
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw SolverError("QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (vectors)
                    simd::rotate({zt.data() + i * n, n}, {zt.data() + (i + 1) * n, n}, c, s);
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

SymmetricEigen sorted(std::vector<double>& d, std::vector<double>& zt, bool vectors) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    SymmetricEigen out;
    out.n = n;
    out.values.resize(n);
    if (vectors) out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        if (vectors)
            std::copy_n(zt.begin() + static_cast<std::ptrdiff_t>(order[k] * n), n,
                        out.vectors.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    return out;
}

}  // namespace

SymmetricEigen tridiagonalEigen(std::vector<double> diag, std::vector<double> off, bool wantVectors) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (off.size() + 1 < n) throw std::invalid_argument("tridiagonalEigen: off-diagonal too short");
    std::vector<double> zt;
    if (wantVectors) {
        zt.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) zt[i * n + i] = 1.0;
    }
    off.resize(n, 0.0);
    qlImplicit(diag, off, zt);
    return sorted(diag, zt, wantVectors);
}

SymmetricEigen symmetricEigen(std::span<const double> a, std::size_t n, bool wantVectors) {
    if (a.size() != n * n) throw std::invalid_argument("symmetricEigen: matrix size mismatch");
    if (n == 0) return {};
    std::vector<double> w(a.begin(), a.end());
    std::vector<double> d(n), e(n, 0.0);
    // Householder vectors, row k holds v for step k (entries k+1..n-1).
    std::vector<double> hv(wantVectors ? n * n : 0, 0.0);
    std::vector<double> beta(n, 0.0);
    std::vector<double> p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double* x = &q[k + 1];
        for (std::size_t i = k + 1; i < n; ++i) q[i] = w[i * n + k];
        const double sigma = std::sqrt(simd::dot({x, len}, {x, len}));
        d[k] = w[k * n + k];
        if (sigma == 0.0) {
            e[k] = 0.0;
            continue;
        }
        const double alpha = x[0] > 0.0 ? -sigma : sigma;
        e[k] = alpha;
        x[0] -= alpha;  // v = x - alpha e1
        const double vnorm2 = simd::dot({x, len}, {x, len});
        const double b = 2.0 / vnorm2;
        beta[k] = b;
        // p = b A' v, then w = p - (b/2)(p.v) v
        for (std::size_t i = k + 1; i < n; ++i) p[i] = b * simd::dot({w.data() + i * n + k + 1, len}, {x, len});
        const double kcoef = 0.5 * b * simd::dot({&p[k + 1], len}, {x, len});
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= kcoef * q[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            std::span<double> row{w.data() + i * n + k + 1, len};
            simd::axpy(-q[i], {&p[k + 1], len}, row);
            simd::axpy(-p[i], {x, len}, row);
        }
        if (wantVectors) std::copy(x, x + len, hv.begin() + static_cast<std::ptrdiff_t>(k * n + k + 1));
    }
    if (n >= 2) {
        d[n - 2] = w[(n - 2) * n + (n - 2)];
        e[n - 2] = w[(n - 1) * n + (n - 2)];
    }
    d[n - 1] = w[(n - 1) * n + (n - 1)];

    std::vector<double> zt;
    if (wantVectors) {
        // Rows of Q^T = H_{n-3} ... H_0 applied to the identity.
        zt.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) zt[i * n + i] = 1.0;
        std::vector<double> t(n);
        for (std::size_t k = 0; k + 2 < n; ++k) {
            if (beta[k] == 0.0) continue;
            const double* v = &hv[k * n];
            std::fill(t.begin(), t.end(), 0.0);
            for (std::size_t i = k + 1; i < n; ++i)
                if (v[i] != 0.0) simd::axpy(v[i], {zt.data() + i * n, n}, t);
            for (std::size_t i = k + 1; i < n; ++i)
                if (v[i] != 0.0) simd::axpy(-beta[k] * v[i], t, {zt.data() + i * n, n});
        }
    }
    qlImplicit(d, e, zt);
    return sorted(d, zt, wantVectors);
}

}  // namespace speclab
