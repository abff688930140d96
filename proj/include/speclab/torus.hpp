#pragma once

#include "speclab/fields.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclab {

// Smooth plateau: 1 on |x| <= r1, 0 on |x| >= r2, exp(-1/t)-type transition.
double bumpPlateau(double x, double r1 = std::numbers::pi / 3.0, double r2 = std::numbers::pi / 2.0);

// psi1 on [-pi, pi]: flattened exp(-1/x^2) cos(1/x^2) near 0, 1 for |x| > pi/2.
double psi1(double x);
// Periodic extension of psi1.
double psi0(double x);

// Profile F(x) with Phi = F(x) cos(m y) and weight Q = 1 - F''/(m^2 F), so
// that (Laplacian + m^2 Q) Phi = 0 on the flat torus.
struct TorusConstruction {
    std::string kind;   // "example1" or "example2"
    int m = 1;          // y-frequency of Phi
    int n = 0;          // x-frequency of F (example2)
    double a = 0.0;     // amplitude (example2)
    std::size_t resolution = 0;      // field resolution in x
    std::size_t scanResolution = 0;  // grid of the positivity certificate
    std::vector<double> F, Fpp, Q;   // on the scan grid
    double minQ = 0.0;
    double argminQ = 0.0;
    double supFppOverF = 0.0;
};

// Example 1: F = 1 + psi0/2, F'' spectral at scanResolution (at least
// max(2^14, 64 * resolution)). m is doubled from 1 until Q_m > 0 unless given.
TorusConstruction buildExample1(std::size_t resolution = 1024, std::optional<int> m = std::nullopt);

// Example 2: F_a = 1 + a cos(n x), m = 1. Requires n >= 3, 0 <= a < 1 and min Q_a > 0.
TorusConstruction buildExample2(int n, double a, std::size_t resolution = 1024);

// Default amplitude 0.75/(n^2 + 1): keeps min Q_a = 1 - a n^2/(1 - a) well above 0.
double defaultAmplitude(int n);

// Closed-form values where available, otherwise subsampled from the scan grid
// (nx must divide scanResolution).
std::vector<double> sampleF(const TorusConstruction& c, std::size_t nx);
std::vector<double> sampleQ(const TorusConstruction& c, std::size_t nx);

// Phi = F(x) cos(m y) on an nx x ny torus grid.
ScalarField2D phiField(const TorusConstruction& c, std::size_t nx, std::size_t ny);
// Phi - 1 evaluated as (F - 1) cos(m y) - 2 sin^2(m y / 2), free of cancellation.
ScalarField2D phiExcessField(const TorusConstruction& c, std::size_t nx, std::size_t ny);

// max |(Laplacian + m^2 Q) Phi| / m^2 with a spectral Laplacian on the grid.
double torusEigenResidual(const TorusConstruction& c, std::size_t nx, std::size_t ny);

}  // namespace speclab
