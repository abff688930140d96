#include "doctest.h"
#include "support/oracles.hpp"

#include "speclab/error.hpp"
#include "speclab/nodal.hpp"
#include "speclab/sphere.hpp"
#include "speclab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace speclab;
using namespace speclab::testing;

constexpr double kPi = std::numbers::pi;

namespace {

ScalarField2D randomField(Rng& rng) {
    const int kind = rng.integer(0, 2);
    const std::size_t n = static_cast<std::size_t>(rng.integer(16, 48));
    std::vector<double> c;
    for (int t = 0; t < 5; ++t) {
        c.push_back(rng.integer(0, 3));
        c.push_back(rng.integer(0, 3));
        c.push_back(rng.uniform(-1, 1));
        c.push_back(rng.uniform(0, 2 * kPi));
    }
    auto f = [c](double x, double y) {
        double v = 0.0;
        for (std::size_t t = 0; t < c.size(); t += 4) v += c[t + 2] * std::cos(c[t] * x + c[t + 1] * y + c[t + 3]);
        return v;
    };
    if (kind == 0) return sampleTorus(n, n + 3, f);
    if (kind == 1) return sampleSphere(n, 2 * n, f, {}, rng.integer(0, 1) ? PolePolicy::cap : PolePolicy::open);
    PlanarMasked g{n, n + 5, -2, 2, -2, 2, std::vector<std::uint8_t>(n * (n + 5), 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n + 5; ++j) g.mask[i * (n + 5) + j] = std::hypot(g.x(i), g.y(j)) < 1.9 ? 1 : 0;
    return samplePlanar(g, f);
}

Side randomSide(Rng& rng) {
    const int s = rng.integer(0, 2);
    return s == 0 ? Side::above : (s == 1 ? Side::below : Side::bothNodal);
}

}  // namespace

TEST_CASE("level components on the examples") {
    const auto one = sampleTorus(32, 32, [](double, double) { return 1.0; });
    CHECK(countLevelComponents(one, 0.0, Side::above).componentCount == 1);
    CHECK(countLevelComponents(one, 0.0, Side::below).componentCount == 0);

    const auto cc = sampleTorus(256, 256, [](double x, double y) { return std::cos(x) * std::cos(y); });
    CHECK(countLevelComponents(cc, 0.0, Side::above).componentCount == 2);
    CHECK(countLevelComponents(cc, 0.0, Side::below).componentCount == 2);
    CHECK(countNodalDomains(cc).componentCount == 4);
    // Oracle at 1024^2.
    const auto big = sampleTorus(1024, 1024, [](double x, double y) { return std::cos(x) * std::cos(y); });
    CHECK(bfsComponents(big, 0.0, Side::bothNodal).count == 4);

    // Phi_a with a = 0.1 is not an admissible construction (Q_a < 0) but the
    // field itself still has n components above 1.
    const auto phi = sampleTorus(512, 128, [](double x, double y) { return (1 + 0.1 * std::cos(5 * x)) * std::cos(y); });
    CHECK(countLevelComponents(phi, 1.0, Side::above).componentCount == 5);

    const auto s = sampleTorus(64, 64, [](double x, double) { return std::sin(x); });
    CHECK(countNodalDomains(s).componentCount == 2);

    // Two crossing lines. The crossing sits on a cell centre so the column x = c
    // is exactly zero; otherwise the sampled saddle joins two opposite quadrants.
    PlanarMasked box{128, 128, -1, 1, -1, 1, {}};
    const double c0 = box.x(64);
    const auto lines = samplePlanar(box, [c0](double x, double y) { return (x - c0) * (y - c0 + 2 * (x - c0)); });
    CHECK(countNodalDomains(lines).componentCount == 4);
}

TEST_CASE("report invariants") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const ScalarField2D f = randomField(rng);
        const double a = rng.uniform(-0.5, 0.5);
        const auto r = countLevelComponents(f, a, randomSide(rng));
        CHECK(r.componentCells.size() == r.componentCount);
        std::size_t sum = 0;
        for (std::size_t c : r.componentCells) {
            CHECK(c >= 1);
            sum += c;
        }
        CHECK(sum <= cellCount(f.topology));
    }
}

TEST_CASE("union-find agrees with the BFS oracle on random fields") {
    Rng rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const ScalarField2D f = randomField(rng);
        const double a = rng.uniform(-0.6, 0.6);
        const Side side = randomSide(rng);
        const Connectivity conn = rng.integer(0, 1) ? Connectivity::eight : Connectivity::four;
        NodalOptions opts;
        opts.connectivity = conn;
        opts.relTolerance = rng.integer(0, 1) ? 0.0 : 1e-3;
        opts.maxBandFraction = 1.0;
        const auto r = countLevelComponents(f, a, side, opts);
        const auto o = bfsComponents(f, a, side, conn, opts.relTolerance);
        CAPTURE(trial);
        CAPTURE(topologyName(f.topology));
        CHECK(r.componentCount == o.count);
        CHECK(r.componentCells == o.sizes);
    }
}

TEST_CASE("complementarity: above a on f equals below -a on -f") {
    Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        ScalarField2D f = randomField(rng);
        const double a = rng.uniform(-0.5, 0.5);
        ScalarField2D g = f;
        for (double& v : g.values) v = -v;
        const auto up = countLevelComponents(f, a, Side::above);
        const auto down = countLevelComponents(g, -a, Side::below);
        CHECK(up.componentCount == down.componentCount);
        CHECK(up.componentCells == down.componentCells);
    }
}

TEST_CASE("corpus: oracle equivalence at 128 and refinement stability") {
    for (const CorpusEntry& e : fieldCorpus()) {
        CAPTURE(e.name);
        const ScalarField2D f = e.build(128);
        const auto r = countLevelComponents(f, e.threshold, e.side);
        const auto o = bfsComponents(f, e.threshold, e.side);
        CHECK(r.componentCount == o.count);
        CHECK(r.componentCells == o.sizes);
        if (e.nMin == 0) continue;
        const std::size_t c1 = countLevelComponents(e.build(e.nMin), e.threshold, e.side).componentCount;
        const std::size_t c2 = countLevelComponents(e.build(2 * e.nMin), e.threshold, e.side).componentCount;
        const std::size_t c4 = countLevelComponents(e.build(4 * e.nMin), e.threshold, e.side).componentCount;
        CHECK(c1 == c2);
        CHECK(c2 == c4);
        CHECK(c4 == r.componentCount);
    }
}

TEST_CASE("wrap and cap adjacency") {
    // A band across the x seam of the torus is one component.
    const auto seam = sampleTorus(64, 64, [](double x, double) { return std::cos(x); });
    CHECK(countLevelComponents(seam, 0.5, Side::above).componentCount == 1);
    // A polar cap region on the sphere is one component through the cap cell.
    const auto cap = sampleSphere(64, 128, [](double t, double p) { return std::cos(t) + 0.01 * std::cos(p); });
    CHECK(countLevelComponents(cap, 0.5, Side::above).componentCount == 1);
    // Open poles: rows still wrap in phi, so two great circles give 4 and not 6.
    const auto open = sampleSphere(64, 128, [](double t, double p) { return std::cos(t) * std::cos(p); }, {},
                                   PolePolicy::open);
    CHECK(countNodalDomains(open).componentCount == 4);
}

TEST_CASE("subregion counts") {
    const auto one = sampleTorus(32, 32, [](double, double) { return 1.0; });
    const Subregion band{0.5, 1.5, 0.0, 2 * kPi};
    CHECK(componentCountInBand(one, 0.0, Side::above, band).componentCount == 1);
    CHECK(componentCountInBand(one, 0.0, Side::below, band).componentCount == 0);
    CHECK_THROWS(componentCountInBand(one, 0.0, Side::above, Subregion{0.01, 0.02, 0.0, 1.0}));
}

TEST_CASE("example 1 component counts grow as the band approaches the singular point") {
    const TorusConstruction c = buildExample1(8192);
    const ScalarField2D f = phiExcessField(c, 8192, 4 * c.m);
    NodalOptions exact;
    exact.relTolerance = 0.0;
    auto count = [&](double lo) {
        return componentCountInBand(f, 0.0, Side::above, Subregion{lo, 0.3, 0.0, 2 * kPi}, exact).componentCount;
    };
    const std::size_t k1 = count(0.1), k2 = count(0.05), k3 = count(0.02);
    CAPTURE(k1);
    CAPTURE(k2);
    CAPTURE(k3);
    CHECK(k1 >= 1);
    CHECK(k2 >= k1);
    CHECK(k3 >= k2);
    CHECK(k3 > k1);
}

TEST_CASE("sphere oscillation bands grow under refinement") {
    const SphereProfile prof({1, 3, 1.0 / 32});
    const auto c512 = sphereComponentCount(prof, 512);
    const auto c2048 = sphereComponentCount(prof, 2048);
    CHECK(c512.count == c512.oracleCount);
    CHECK(c2048.count == c2048.oracleCount);
    CHECK(c2048.count > c512.count);
}

TEST_CASE("degenerate thresholds are rejected") {
    const auto one = sampleTorus(32, 32, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(countLevelComponents(one, 1.0, Side::above), DegenerateThreshold);
    CHECK(parseSide("both") == Side::bothNodal);
    CHECK_THROWS(parseSide("sideways"));
}
