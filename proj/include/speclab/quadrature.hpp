#pragma once

#include <array>
#include <functional>

namespace speclab {

struct GaussRule7 {
    std::array<double, 7> nodes;    // on [-1, 1]
    std::array<double, 7> weights;
};
const GaussRule7& gaussLegendre7();

// Composite 7-point Gauss-Legendre over [a, b] with equal panels.
double integrateGL7(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace speclab
