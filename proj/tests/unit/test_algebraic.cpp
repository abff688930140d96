#include "doctest.h"
#include "support/oracles.hpp"

#include "speclab/error.hpp"
#include "speclab/hermite.hpp"
#include "speclab/poly_nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace speclab;
using speclab::testing::Rng;

constexpr double kPi = std::numbers::pi;

namespace {

Poly2 fromTerms(int degree, std::initializer_list<std::tuple<int, int, double>> terms) {
    Poly2 p(degree);
    for (auto [i, j, c] : terms) p.at(i, j) = c;
    return p;
}

}  // namespace

TEST_CASE("Hermite polynomials") {
    CHECK(hermiteEval(0, 0.7) == 1.0);
    CHECK(hermiteEval(1, 0.7) == 1.4);
    CHECK(hermiteEval(3, 1.0) == -4.0);
    CHECK(hermiteEval(2, 2.0) == 14.0);
    // Power-basis coefficients agree with the recurrence.
    for (int k = 0; k <= 12; ++k) {
        const auto c = hermiteCoefficients(k);
        for (double x : {-1.3, 0.2, 2.1}) {
            double v = 0.0;
            for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
            CHECK(v == doctest::Approx(hermiteEval(k, x)).epsilon(1e-12));
        }
    }
    // Orthogonality under the Gaussian weight; norm sqrt(pi) 2^k k!.
    const GaussHermite gh = gaussHermite(40);
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < gh.nodes.size(); ++i)
                s += gh.weights[i] * hermiteEval(a, gh.nodes[i]) * hermiteEval(b, gh.nodes[i]);
            double norm = std::sqrt(kPi) * std::pow(2.0, a) * std::tgamma(a + 1.0);
            CHECK(std::abs(s - (a == b ? norm : 0.0)) < 1e-10 * norm);
        }
    CHECK_THROWS(hermiteEval(61, 1.0));
}

TEST_CASE("basis order and round trip") {
    const auto b = hermiteBasis(6);
    const int want[6][2] = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    for (int i = 0; i < 6; ++i) {
        CHECK(b[i].a + b[i].b == want[i][0] + want[i][1]);
        CHECK(b[i].flat == static_cast<std::size_t>(i));
    }
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i].eigenvalue() >= b[i - 1].eigenvalue());

    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(1, 21);
        std::vector<double> c(n);
        for (double& x : c) x = rng.uniform(-1, 1);
        const QhoCombination q = qhoCombination(c);
        CHECK(static_cast<std::size_t>((q.levelDegree + 1) * (q.levelDegree + 2) / 2) >= c.size());
        const auto back = hermiteBasisCoefficients(q.poly);
        for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - c[i]) < 1e-9);
        for (std::size_t i = n; i < back.size(); ++i) CHECK(std::abs(back[i]) < 1e-9);
    }
}

TEST_CASE("polynomial products evaluate pointwise") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Poly2 p(rng.integer(0, 4)), q(rng.integer(0, 4));
        for (double& c : p.c) c = rng.uniform(-1, 1);
        for (double& c : q.c) c = rng.uniform(-1, 1);
        const Poly2 r = p * q;
        for (int s = 0; s < 5; ++s) {
            const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
            CHECK(r(x, y) == doctest::Approx(p(x, y) * q(x, y)).epsilon(1e-12));
        }
    }
}

TEST_CASE("plane nodal counts of simple polynomials") {
    CHECK(countPolyNodalPlane(fromTerms(2, {{1, 1, 1.0}}), 2.0, 512).total == 4);
    const Poly2 three = fromTerms(1, {{1, 0, 1.0}, {0, 1, -1.0}}) * fromTerms(1, {{1, 0, 1.0}, {0, 1, 1.0}}) *
                        fromTerms(1, {{1, 0, 1.0}, {0, 0, -1.0}});
    CHECK(countPolyNodalPlane(three, 4.0, 1024, singularBandFor(kPi / 4)).total == 7);
    CHECK(countPolyNodalPlane(fromTerms(2, {{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, 1.0}}), 2.0, 256).total == 1);
    // n = 1: the ground state has no nodal line.
    const QhoCombination g = qhoCombination({0.7});
    CHECK(countPolyNodalPlane(g.poly, g.windowRadius, 256).total == 1);
}

TEST_CASE("tangent lines reach k(k+1)/2 + 1") {
    for (int k = 1; k <= 6; ++k) {
        const Poly2 p = tangentLinesPolynomial(k);
        const double band = singularBandFor(k == 1 ? kPi / 2 : kPi / k);
        const auto r = countPolyNodalPlane(p, 5.0, 1024, band);
        CAPTURE(k);
        CHECK(r.total == static_cast<std::size_t>(k * (k + 1) / 2 + 1));
        CHECK(r.unbounded == static_cast<std::size_t>(2 * k));
    }
}

TEST_CASE("polynomials on the sphere") {
    Poly3 z(1);
    z.at(0, 0, 1) = 1.0;
    CHECK(countPolyOnSphere(z, 256, 512).count == 2);
    Poly3 xyz(3);
    xyz.at(1, 1, 1) = 1.0;
    CHECK(countPolyOnSphere(xyz, 256, 512).count == 8);

    // Isotropic powers are homogeneous and harmonic.
    const double s = 1.0 / std::sqrt(2.0);
    const Poly3 h = isotropicPower({1, 0, 0}, {0, s, s}, 4);
    const double step = 1e-3;
    for (auto pt : {std::array<double, 3>{0.3, -0.2, 0.5}, std::array<double, 3>{1.1, 0.4, -0.7}}) {
        const auto [x, y, zz] = pt;
        CHECK(h(2 * x, 2 * y, 2 * zz) == doctest::Approx(16 * h(x, y, zz)).epsilon(1e-12));
        const double lap = (h(x + step, y, zz) + h(x - step, y, zz) + h(x, y + step, zz) + h(x, y - step, zz) +
                            h(x, y, zz + step) + h(x, y, zz - step) - 6 * h(x, y, zz)) /
                           (step * step);
        CHECK(std::abs(lap) < 1e-5);
    }
    const auto t = sphereTrials(4, 6, 256, 512);
    CHECK(t.over8 == 0);
    CHECK(t.maxCount <= 128);
}

TEST_CASE("Gaussian factor does not change the count") {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.integer(1, 15);
        std::vector<double> c(n);
        for (double& x : c) x = rng.uniform(-1, 1);
        const QhoCombination q = qhoCombination(c);
        const auto a = countPolyNodalPlane(q.poly, q.windowRadius, 384);
        const auto b = countQhoFull(q.poly, q.windowRadius, 384);
        CHECK(a.total == b.total);
    }
}

TEST_CASE("oscillator trials stay within the bound") {
    for (int n : {1, 3, 6, 10, 15}) {
        const auto s = qhoTrials(n, 4, 512);
        CAPTURE(n);
        CHECK(s.violations == 0);
        CHECK(s.maxCount <= static_cast<std::size_t>(n));
    }
    // Trials are deterministic and offset by index.
    CHECK(qhoTrialCoefficients(5, 3) == qhoTrialCoefficients(5, 3));
    CHECK(qhoTrials(6, 2, 256, 1).counts[0] == qhoTrials(6, 2, 256, 0).counts[1]);
}
