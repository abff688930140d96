#pragma once

#include "speclab/hermite.hpp"
#include "speclab/nodal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace speclab {

// Nodal domains of f in the plane, counted on the disk of radius R sampled
// on a resolution^2 grid with exact signs. Components reaching the window
// boundary on the same sign arc of the circle |x| = R are one unbounded
// domain.
//
// singularBand > 0 treats cells with |f| < singularBand * (h/2) * |grad f|
// (h the cell size) as nodal. Where nodal lines cross, adjacent cells in
// opposite sectors would otherwise join; with singularBand >= 1/sqrt(1 -
// |cos angle|) for the sharpest crossing angle no 4-neighbours straddle a
// crossing. Use it only for fields with singular nodal sets.
struct PlaneNodalReport {
    std::size_t positive = 0, negative = 0, total = 0;
    std::size_t unbounded = 0;  // domains touching the boundary circle
    std::size_t arcs = 0;       // sign arcs on the circle
    double radius = 0.0;
    std::size_t resolution = 0;
    std::size_t bandCells = 0;
};
// Band for crossings at angle >= minAngle, with half a cell of margin.
double singularBandFor(double minAngle);

PlaneNodalReport countPlaneNodal(const std::function<double(double, double)>& f, double R,
                                 std::size_t resolution, double singularBand = 0.0);
PlaneNodalReport countPolyNodalPlane(const Poly2& p, double R, std::size_t resolution,
                                     double singularBand = 0.0);
// The full oscillator function exp(-(x^2+y^2)/2) P on the same window.
PlaneNodalReport countQhoFull(const Poly2& p, double R, std::size_t resolution,
                              double singularBand = 0.0);

struct SphereBoundReport {
    std::size_t count = 0;
    int degree = 0;
    std::size_t bound8 = 0, bound32 = 0;  // 8 d^2 and 32 d^2
    bool pass8 = false, pass32 = false;
    std::string resolution;
};
SphereBoundReport countPolyOnSphere(const Poly3& p, std::size_t ntheta, std::size_t nphi);

// Seeded oscillator trials over the first n basis functions.
struct QhoTrialSummary {
    int n = 0;
    int trials = 0;
    std::size_t maxCount = 0;
    std::size_t violations = 0;  // count > n
    std::vector<std::size_t> counts;
};
std::vector<double> qhoTrialCoefficients(int n, int trial);
// Trial t uses the coefficient seed of index firstTrial + t.
QhoTrialSummary qhoTrials(int n, int trials, std::size_t resolution, int firstTrial = 0);

struct SphereTrialSummary {
    int degree = 0;
    int trials = 0;
    std::size_t maxCount = 0;
    std::size_t over8 = 0;     // count > 8 l^2
    std::size_t overEcp = 0;   // count > l^2 + 1 (observation only)
    std::vector<std::size_t> counts;
};
SphereTrialSummary sphereTrials(int degree, int trials, std::size_t ntheta, std::size_t nphi, int firstTrial = 0);

}  // namespace speclab
