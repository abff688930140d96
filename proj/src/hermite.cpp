#include "speclab/hermite.hpp"

#include "speclab/error.hpp"
#include "speclab/fem.hpp"
#include "speclab/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace speclab {

double hermiteEval(int k, double x) {
    if (k < 0 || k > 60) throw std::invalid_argument("hermiteEval: need 0 <= k <= 60");
    if (k * std::log(2.0 * std::abs(x) + 2.0 * std::sqrt(static_cast<double>(k)) + 1.0) > 700.0)
        throw SamplingError("hermiteEval: H_" + std::to_string(k) + " overflows at x = " + std::to_string(x));
    double h0 = 1.0;
    if (k == 0) return h0;
    double h1 = 2.0 * x;
    for (int n = 1; n < k; ++n) {
        const double h2 = 2.0 * x * h1 - 2.0 * n * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

std::vector<double> hermiteCoefficients(int k) {
    if (k < 0 || k > 60) throw std::invalid_argument("hermiteCoefficients: need 0 <= k <= 60");
    std::vector<double> h0{1.0};
    if (k == 0) return h0;
    std::vector<double> h1{0.0, 2.0};
    for (int n = 1; n < k; ++n) {
        std::vector<double> h2(n + 2, 0.0);
        for (int i = 0; i <= n; ++i) h2[i + 1] += 2.0 * h1[i];
        for (int i = 0; i < n; ++i) h2[i] -= 2.0 * n * h0[i];
        h0 = std::move(h1);
        h1 = std::move(h2);
    }
    return h1;
}

GaussHermite gaussHermite(int n) {
    if (n < 1) throw std::invalid_argument("gaussHermite: n must be >= 1");
    std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
    const SymmetricEigen e = tridiagonalEigen(diag, off, true);
    GaussHermite g;
    for (int k = 0; k < n; ++k) {
        g.nodes.push_back(e.values[k]);
        const double v0 = e.vector(k)[0];
        g.weights.push_back(std::sqrt(std::numbers::pi) * v0 * v0);
    }
    return g;
}

Poly2::Poly2(int d) : degree(d), c((d + 1) * (d + 2) / 2, 0.0) {
    if (d < 0) throw std::invalid_argument("Poly2: negative degree");
}

std::size_t Poly2::index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
}

double Poly2::operator()(double x, double y) const {
    // Horner in y inside Horner in x.
    double sum = 0.0;
    for (int i = degree; i >= 0; --i) {
        double inner = 0.0;
        for (int j = degree - i; j >= 0; --j) inner = inner * y + c[index(i, j)];
        sum = sum * x + inner;
    }
    return sum;
}

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 r(degree + o.degree);
    for (int d1 = 0; d1 <= degree; ++d1)
        for (int j1 = 0; j1 <= d1; ++j1) {
            const double a = at(d1 - j1, j1);
            if (a == 0.0) continue;
            for (int d2 = 0; d2 <= o.degree; ++d2)
                for (int j2 = 0; j2 <= d2; ++j2) r.at(d1 - j1 + d2 - j2, j1 + j2) += a * o.at(d2 - j2, j2);
        }
    return r;
}

void Poly2::trim() {
    while (degree > 0) {
        bool zero = true;
        for (int j = 0; j <= degree; ++j) zero = zero && at(degree - j, j) == 0.0;
        if (!zero) break;
        --degree;
        c.resize((degree + 1) * (degree + 2) / 2);
    }
}

Poly3::Poly3(int d) : degree(d), c((d + 1) * (d + 2) * (d + 3) / 6, 0.0) {
    if (d < 0) throw std::invalid_argument("Poly3: negative degree");
}

std::size_t Poly3::index(int i, int j, int k) {
    const int d = i + j + k;
    // Terms of lower total degree, then (j, k) within degree d.
    const int r = j + k;
    return static_cast<std::size_t>(d * (d + 1) * (d + 2) / 6 + r * (r + 1) / 2 + k);
}

double Poly3::operator()(double x, double y, double z) const {
    double sum = 0.0;
    for (int d = 0; d <= degree; ++d)
        for (int r = 0; r <= d; ++r)
            for (int k = 0; k <= r; ++k) {
                const double a = c[index(d - r, r - k, k)];
                if (a != 0.0) sum += a * std::pow(x, d - r) * std::pow(y, r - k) * std::pow(z, k);
            }
    return sum;
}

std::vector<HermiteBasisIndex> hermiteBasis(std::size_t count) {
    std::vector<HermiteBasisIndex> out;
    for (int level = 0; out.size() < count; ++level)
        for (int a = 0; a <= level && out.size() < count; ++a) out.push_back({a, level - a, out.size()});
    return out;
}

QhoCombination qhoCombination(const std::vector<double>& coeffs) {
    if (coeffs.empty() || std::all_of(coeffs.begin(), coeffs.end(), [](double v) { return v == 0.0; }))
        throw std::invalid_argument("qhoCombination: all coefficients are zero");
    const auto basis = hermiteBasis(coeffs.size());
    QhoCombination q;
    while (static_cast<std::size_t>((q.levelDegree + 1) * (q.levelDegree + 2) / 2) < coeffs.size()) ++q.levelDegree;
    q.poly = Poly2(q.levelDegree);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        const auto ha = hermiteCoefficients(basis[i].a);
        const auto hb = hermiteCoefficients(basis[i].b);
        for (std::size_t p = 0; p < ha.size(); ++p)
            for (std::size_t r = 0; r < hb.size(); ++r)
                q.poly.at(static_cast<int>(p), static_cast<int>(r)) += coeffs[i] * ha[p] * hb[r];
    }
    q.poly.trim();
    // Cauchy bound 1 + max |a_i / a_top| on each axis restriction.
    double bound = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<double> p(q.poly.degree + 1);
        for (int e = 0; e <= q.poly.degree; ++e) p[e] = axis == 0 ? q.poly.at(e, 0) : q.poly.at(0, e);
        int top = q.poly.degree;
        while (top > 0 && p[top] == 0.0) --top;
        if (top == 0) continue;
        double m = 0.0;
        for (int e = 0; e < top; ++e) m = std::max(m, std::abs(p[e] / p[top]));
        bound = std::max(bound, 1.0 + m);
    }
    q.windowRadius = 1.0 + bound;
    return q;
}

std::vector<double> hermiteBasisCoefficients(const Poly2& p) {
    Poly2 rest = p;
    const int d = p.degree;
    const std::size_t n = static_cast<std::size_t>((d + 1) * (d + 2) / 2);
    const auto basis = hermiteBasis(n);
    std::vector<double> coef(n, 0.0);
    // Peel leading monomials from the top degree down; H_a H_b leads with 2^{a+b} x^a y^b.
    for (std::size_t idx = n; idx-- > 0;) {
        const int a = basis[idx].a, b = basis[idx].b;
        const double lead = rest.at(a, b);
        if (lead == 0.0) continue;
        const double c = lead / std::ldexp(1.0, a + b);
        coef[idx] = c;
        const auto ha = hermiteCoefficients(a);
        const auto hb = hermiteCoefficients(b);
        for (std::size_t i = 0; i < ha.size(); ++i)
            for (std::size_t j = 0; j < hb.size(); ++j)
                rest.at(static_cast<int>(i), static_cast<int>(j)) -= c * ha[i] * hb[j];
        rest.at(a, b) = 0.0;
    }
    return coef;
}

Poly2 tangentLinesPolynomial(int k) {
    if (k < 1) throw std::invalid_argument("tangentLinesPolynomial: k must be >= 1");
    Poly2 p(0);
    p.at(0, 0) = 1.0;
    for (int i = 0; i < k; ++i) {
        const double phi = std::numbers::pi * (i + 0.5) / k;
        Poly2 line(1);
        line.at(0, 0) = -1.0;
        line.at(1, 0) = std::cos(phi);
        line.at(0, 1) = std::sin(phi);
        p = p * line;
    }
    return p;
}

Poly3 isotropicPower(const std::array<double, 3>& a, const std::array<double, 3>& b, int l) {
    using C = std::complex<double>;
    const C v[3] = {C(a[0], b[0]), C(a[1], b[1]), C(a[2], b[2])};
    Poly3 p(l);
    std::vector<double> fact(l + 1, 1.0);
    for (int i = 1; i <= l; ++i) fact[i] = fact[i - 1] * i;
    for (int i = 0; i <= l; ++i)
        for (int j = 0; i + j <= l; ++j) {
            const int k = l - i - j;
            const C term = fact[l] / (fact[i] * fact[j] * fact[k]) * std::pow(v[0], i) * std::pow(v[1], j) *
                           std::pow(v[2], k);
            p.at(i, j, k) = term.real();
        }
    return p;
}

Poly3 randomHarmonic(int l, int terms, std::uint64_t seed) {
    Poly3 sum(l);
    std::uint64_t draw = 0;
    auto next = [&]() { return indexHash(seed, draw++); };
    for (int t = 0; t < terms; ++t) {
        std::array<double, 3> a{next(), next(), next()}, b{next(), next(), next()};
        auto norm = [](std::array<double, 3>& v) {
            const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            for (double& x : v) x /= n;
        };
        norm(a);
        const double d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        for (int i = 0; i < 3; ++i) b[i] -= d * a[i];
        norm(b);
        const double w = next();
        const Poly3 p = isotropicPower(a, b, l);
        for (std::size_t i = 0; i < sum.c.size(); ++i) sum.c[i] += w * p.c[i];
    }
    return sum;
}

}  // namespace speclab
