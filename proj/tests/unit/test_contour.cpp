#include "doctest.h"

#include "speclab/contour.hpp"
#include "speclab/torus.hpp"

#include <cmath>
#include <numbers>

using namespace speclab;

constexpr double kPi = std::numbers::pi;

TEST_CASE("degenerate levels") {
    const auto one = sampleTorus(32, 32, [](double, double) { return 1.0; });
    const ContourSet c = extractContours(one, 0.5);
    CHECK(c.lines.empty());
    CHECK(c.outOfRange);
    const std::string svg = renderContourSVG(one, 2.0, "flat");
    CHECK(svg.find("class=\"warning\"") != std::string::npos);
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("closed loops and determinism") {
    const auto f = sampleTorus(128, 128, [](double x, double y) { return std::cos(x) + std::cos(y); });
    const ContourSet a = extractContours(f, 0.0);
    const ContourSet b = extractContours(f, 0.0);
    CHECK(a.closedCount() == 1);
    CHECK(a.vertexCount() == b.vertexCount());
    CHECK(renderContourSVG(f, 0.0, "t") == renderContourSVG(f, 0.0, "t"));

    const TorusConstruction c = buildExample2(5, defaultAmplitude(5), 1024);
    const ContourSet e = extractContours(phiField(c, 1024, 256), 1.0);
    CHECK(e.closedCount() == 5);
    CHECK(e.lines.size() == 5);
}

TEST_CASE("stitching across seams") {
    // A bump centred on the corner of the parameter box crosses both seams.
    const auto bump = sampleTorus(64, 64, [](double x, double y) {
        return std::cos(x) + std::cos(y);
    });
    const ContourSet c = extractContours(bump, 1.0);
    CHECK(c.lines.size() == 1);
    CHECK(c.closedCount() == 1);
    // Two non-contractible lines y = +-pi/3.
    const auto band = sampleTorus(64, 64, [](double, double y) { return std::cos(y); });
    const ContourSet d = extractContours(band, 0.5);
    CHECK(d.lines.size() == 2);
    CHECK(d.closedCount() == 2);
    // One crossing per column plus the repeated first point.
    for (const auto& l : d.lines) {
        CHECK(l.points.size() == 65);
        CHECK(l.points.front() == l.points.back());
        CHECK(std::abs(std::abs(l.points.front()[1] - kPi) - 2 * kPi / 3) < 0.05);
    }
}
