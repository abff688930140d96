#include "doctest.h"

#include "speclab/error.hpp"
#include "speclab/nodal.hpp"
#include "speclab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace speclab;

constexpr double kPi = std::numbers::pi;

TEST_CASE("psi1 values") {
    CHECK(psi1(3.0) == 1.0);
    CHECK(psi1(-3.0) == 1.0);
    CHECK(psi1(0.0) == 0.0);
    CHECK(std::abs(psi1(1.0 / std::sqrt(kPi / 2 + 2 * kPi))) < 1e-12);
    CHECK(bumpPlateau(0.5) == 1.0);
    CHECK(bumpPlateau(2.0) == 0.0);
    // psi0 is the 2 pi periodic extension.
    for (double x : {0.3, 1.7, -2.5}) CHECK(psi0(x + 2 * kPi) == doctest::Approx(psi0(x)).epsilon(1e-14));
}

TEST_CASE("example 1 construction") {
    const TorusConstruction c = buildExample1(1024);
    CHECK(c.minQ > 0.0);
    CHECK(c.m * c.m > c.supFppOverF);
    CHECK(c.scanResolution >= 64 * 1024);
    // Doubling picks the first power of two above sup F''/F.
    CHECK((c.m == 1 || (c.m / 2) * (c.m / 2) <= c.supFppOverF));
    CHECK_THROWS_AS(buildExample1(1024, 1), ConstructionError);

    CHECK(torusEigenResidual(c, 1024, 8 * c.m) < 1e-6);

    // {psi0 < 0} x T is inside {Phi < 1}. Where |psi0| is below half an ulp
    // of 1, F rounds to 1 and only Phi <= 1 survives in doubles.
    const auto phi = phiField(c, 1024, 8 * c.m);
    const TorusPeriodic& t = std::get<TorusPeriodic>(phi.topology);
    for (std::size_t i = 0; i < t.nx; ++i) {
        const double p0 = psi0(t.x(i));
        if (!(p0 < 0.0)) continue;
        const bool representable = 1.0 + 0.5 * p0 < 1.0;
        for (std::size_t j = 0; j < t.ny; ++j) {
            if (representable) CHECK(phi.at(i, j) < 1.0);
            else CHECK(phi.at(i, j) <= 1.0);
        }
    }
    // cos(m y) = 0 on the column y = pi / (2m).
    const std::size_t col = t.ny / (4 * static_cast<std::size_t>(c.m));
    CHECK(std::abs(t.y(col) - kPi / (2 * c.m)) < 1e-15);
    for (std::size_t i = 0; i < t.nx; ++i) CHECK(std::abs(phi.at(i, col)) < 1e-15);
}

TEST_CASE("example 2 acceptance of the amplitude") {
    CHECK_THROWS_AS(buildExample2(5, 0.1), ConstructionError);
    const TorusConstruction ok = buildExample2(5, 0.03, 512);
    // Closed form min over a dense scan, independent of the construction.
    double minQ = 1e9;
    for (int i = 0; i < 1000000; ++i) {
        const double x = 2 * kPi * i / 1e6;
        const double F = 1 + 0.03 * std::cos(5 * x);
        minQ = std::min(minQ, 1 + 0.03 * 25 * std::cos(5 * x) / F);
    }
    CHECK(minQ == doctest::Approx(1 - 0.75 / 0.97).epsilon(1e-9));
    CHECK(ok.minQ == doctest::Approx(minQ).epsilon(1e-6));
    CHECK_THROWS(buildExample2(5, 1.0));
    CHECK_THROWS(buildExample2(2, 0.01));
    CHECK(defaultAmplitude(5) == 0.75 / 26);

    const TorusConstruction zero = buildExample2(5, 0.0, 256);
    for (double q : sampleQ(zero, 256)) CHECK(q == 1.0);
}

TEST_CASE("example 2 residual, symmetry and components") {
    const TorusConstruction c = buildExample2(5, defaultAmplitude(5), 512);
    CHECK(torusEigenResidual(c, 512, 64) < 1e-10);
    const auto phi = phiField(c, 512, 64);
    for (std::size_t i = 0; i < 512; ++i)
        for (std::size_t j = 0; j < 64; ++j) {
            CHECK(phi.at(i, j) == phi.at((512 - i) % 512, j));
            CHECK(phi.at(i, j) == phi.at(i, (64 - j) % 64));
        }
    CHECK(countLevelComponents(phiExcessField(c, 1024, 256), 0.0, Side::above).componentCount == 5);
}
