#include "doctest.h"
#include "support/oracles.hpp"

#include "speclab/error.hpp"
#include "speclab/nodal.hpp"
#include "speclab/spectrum1d.hpp"
#include "speclab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

using namespace speclab;
using speclab::testing::Rng;

constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> constant(std::size_t n, double v) { return std::vector<double>(n, v); }

// Positive even trigonometric weight with random coefficients.
std::vector<double> randomEvenWeight(Rng& rng, std::size_t n) {
    const double a1 = rng.uniform(-0.3, 0.3), a2 = rng.uniform(-0.3, 0.3);
    const int k1 = rng.integer(1, 4), k2 = rng.integer(1, 6);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2 * kPi * i / n;
        q[i] = 1 + a1 * std::cos(k1 * x) + a2 * std::cos(k2 * x);
    }
    return q;
}

int signChanges(const std::vector<double>& u) {
    double big = 0.0;
    for (double v : u) big = std::max(big, std::abs(v));
    std::vector<int> s;
    for (double v : u)
        if (std::abs(v) > 1e-9 * big) s.push_back(v > 0 ? 1 : -1);
    int c = 0;
    for (std::size_t i = 0; i < s.size(); ++i) c += s[i] != s[(i + 1) % s.size()];
    return c;
}

}  // namespace

TEST_CASE("constant weights") {
    const auto p = solveSturm(constant(128, 1.0), 0, 5);
    const double want[] = {0, 1, 1, 4, 4};
    for (int j = 0; j < 5; ++j) CHECK(std::abs(p[j].value - want[j]) < 1e-9);
    CHECK(p[0].index == 1);
    CHECK(p[4].index == 5);

    const auto q4 = solveSturm(constant(128, 4.0), 0, 7);
    const double want4[] = {0, 0.25, 0.25, 1, 1, 2.25, 2.25};
    for (int j = 0; j < 7; ++j) CHECK(std::abs(q4[j].value - want4[j]) < 1e-9);

    const auto t = torusSpectrum(constant(128, 1.0), 3, 9);
    const double wantT[] = {0, 1, 1, 1, 1, 2, 2, 2, 2};
    for (int j = 0; j < 9; ++j) CHECK(std::abs(t[j].value - wantT[j]) < 1e-9);
    CHECK_THROWS_AS(torusSpectrum(constant(128, 1.0), 1, 9), GuardViolation);
    CHECK_THROWS(solveSturm(constant(128, -1.0), 0, 3));
}

TEST_CASE("example 2 weight: F_a is the first even k = 1 eigenvector") {
    const double a = defaultAmplitude(5);
    const auto Q = weightQa(5, a, 256);
    const auto p = solveSturm(Q, 1, 3, Parity::even);
    CHECK(std::abs(p[0].value - 1.0) < 1e-9);
    CHECK(p[0].residual < 1e-8);
    // Proportional to F_a.
    const double ratio = p[0].vector[0] / (1 + a);
    for (std::size_t i = 0; i < 256; ++i)
        CHECK(std::abs(p[0].vector[i] - ratio * (1 + a * std::cos(5 * 2 * kPi * i / 256))) < 1e-9);

    const auto t = torusSpectrum(Q, 3, 6);
    CHECK(std::abs(t[0].value) < 1e-9);
    for (int j = 1; j <= 4; ++j) {
        CHECK(t[j].value > 0.8);
        CHECK(t[j].value < 1.2);
    }
    CHECK(t[5].value >= 1.8);
}

TEST_CASE("perturbation coefficients") {
    const auto c3 = perturbationCoefficients(3);
    CHECK(c3.sigma2 == doctest::Approx(-3.6).epsilon(1e-14));
    for (int n = 3; n <= 9; ++n) {
        const auto c = perturbationCoefficients(n);
        CHECK(c.sigma1 == 0.0);
        CHECK(c.tau1 == 0.0);
        CHECK(c.sigma2 < 0.0);
        CHECK(c.tau2 < 0.0);
        CHECK(c.An < 0.0);
        // Quadrature agrees with the closed form for A_n.
        CHECK(std::abs(c.AnQuadrature - c.An) < 1e-10);
        CHECK(c.sigma2 * kPi == doctest::Approx(n * n * c.An).epsilon(1e-12));
    }
    CHECK_THROWS(perturbationCoefficients(2));
}

TEST_CASE("perturbation check and labelling for n = 3") {
    const std::vector<double> as{0.02, 0.01, 0.005};
    const auto r = verifyPerturbation(3, as);
    CHECK(r.pass);
    CHECK(std::abs(r.sigma2Fit + 3.6) <= 0.02 * 3.6);
    CHECK(std::abs(r.tau2Fit + 3.6) <= 0.02 * 3.6);
    for (std::size_t i = 0; i < as.size(); ++i) {
        CHECK(r.sigma[i] < 1.0);
        CHECK(r.tau[i] < 1.0);
    }
    // sigma and tau share the order-two coefficient.
    CHECK(std::abs(r.sigma[1] - r.tau[1]) <= 10 * 0.01 * 0.01 * 0.01);

    const auto t = torusSpectrum(weightQa(3, 0.01, 512), 3, 8);
    CHECK(t[1].value <= t[2].value);
    CHECK(t[2].value < 1.0 - 1e-6);
    CHECK(std::abs(t[3].value - 1.0) < 1e-8);
    CHECK(std::abs(t[4].value - 1.0) < 1e-8);
    CHECK(t[5].value > 1.0 + 1e-6);
    const auto blocks = multiplicityBlocks(std::vector<double>{t[3].value, t[4].value}, 1e-8);
    CHECK(blocks.size() == 1);
}

TEST_CASE("residuals, weight scaling and parity completeness") {
    Rng rng(9);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 64 * static_cast<std::size_t>(rng.integer(1, 3));
        const auto Q = randomEvenWeight(rng, n);
        const int k = rng.integer(0, 2);
        const auto base = solveSturm(Q, k, 10);
        for (const auto& p : base) CHECK(p.residual < 1e-8);
        for (std::size_t j = 1; j < base.size(); ++j) CHECK(base[j].value >= base[j - 1].value);

        const double c = rng.uniform(0.5, 3.0);
        auto cQ = Q;
        for (double& q : cQ) q *= c;
        const auto scaled = solveSturm(cQ, k, 10);
        for (std::size_t j = 0; j < 10; ++j) CHECK(std::abs(scaled[j].value * c - base[j].value) < 1e-8 * std::max(1.0, base[j].value));
        // Eigenvectors of simple eigenvalues keep the argsort of |u|.
        const auto blocks = multiplicityBlocks(std::vector<double>([&] {
            std::vector<double> v;
            for (const auto& p : base) v.push_back(p.value);
            return v;
        }()), 1e-6);
        for (const auto& b : blocks) {
            if (b.size() != 1 || b[0] == 9) continue;
            const auto& u = base[b[0]].vector;
            const auto& w = scaled[b[0]].vector;
            std::vector<std::size_t> iu(n), iw(n);
            for (std::size_t i = 0; i < n; ++i) iu[i] = iw[i] = i;
            std::stable_sort(iu.begin(), iu.end(), [&](auto x, auto y) { return std::abs(u[x]) < std::abs(u[y]); });
            std::stable_sort(iw.begin(), iw.end(), [&](auto x, auto y) { return std::abs(w[x]) < std::abs(w[y]); });
            // Ties from the reflection symmetry make the order ambiguous between mirror nodes.
            // Vector accuracy degrades like residual / gap (Davis-Kahan), so
            // near-degenerate pairs get a looser tie tolerance.
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t q = 0; q < base.size(); ++q)
                if (q != b[0]) gap = std::min(gap, std::abs(base[q].value - base[b[0]].value));
            const double tol = 1e-9 + 1e-12 * std::max(1.0, base[b[0]].value) / gap;
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(std::abs(u[iu[i]]) - std::abs(u[iw[i]])) < tol);
        }

        auto even = solveSturm(Q, k, 8, Parity::even);
        auto odd = solveSturm(Q, k, 8, Parity::odd);
        std::vector<double> merged;
        for (const auto& p : even) merged.push_back(p.value);
        for (const auto& p : odd) merged.push_back(p.value);
        std::sort(merged.begin(), merged.end());
        for (std::size_t j = 0; j < 10; ++j) CHECK(std::abs(merged[j] - base[j].value) < 1e-8 * std::max(1.0, base[j].value));

        // Sturm: the j-th vector of a parity class has at most 2j sign changes.
        for (const auto& cls : {even, odd})
            for (const auto& p : cls) CHECK(signChanges(p.vector) <= 2 * p.index);
    }
}

TEST_CASE("Courant on torus eigenfunctions") {
    // u(x) cos(k y) or u(x) sin(k y) for each merged pair; the bound uses the
    // first index of the eigenvalue's multiplicity block.
    const auto Q = weightQa(3, 0.01, 128);
    const auto t = torusSpectrum(Q, 4, 12);
    std::vector<double> vals;
    for (const auto& p : t) vals.push_back(p.value);
    for (const auto& block : multiplicityBlocks(vals, 1e-6))
        for (std::size_t idx : block) {
            const auto& p = t[idx];
            const auto f = sampleTorus(128, 128, [&](double x, double y) {
                const std::size_t i = static_cast<std::size_t>(std::lround(x / (2 * kPi) * 128)) % 128;
                return p.vector[i] * (p.ySector == 0 ? std::cos(p.k * y) : std::sin(p.k * y));
            });
            NodalOptions opts;
            opts.relTolerance = 1e-9;
            opts.maxBandFraction = 1.0;
            CAPTURE(idx);
            CHECK(countNodalDomains(f, opts).componentCount <= block.front() + 1);
        }
}
