#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace speclab {

struct Grid1DPeriodic {
    std::size_t n = 0;
    double period = 2.0 * std::numbers::pi;

    Grid1DPeriodic(std::size_t n_, double period_ = 2.0 * std::numbers::pi);
    double node(std::size_t j) const {
        return period * static_cast<double>(j) / static_cast<double>(n);
    }
};

enum class PolePolicy { cap, open };

// Doubly periodic grid with nodes at (2 pi i / nx, 2 pi j / ny).
struct TorusPeriodic {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double x(std::size_t i) const;
    double y(std::size_t j) const;
};

// Cell-centred colatitude rows over [theta0, theta1] and longitude columns
// phi_j = 2 pi j / nphi. Longitude wraps. With the cap policy (full range
// only) one extra cell per pole touches every cell of the adjacent row.
struct SphereLatLong {
    std::size_t ntheta = 0;
    std::size_t nphi = 0;
    PolePolicy poles = PolePolicy::cap;
    double theta0 = 0.0;
    double theta1 = std::numbers::pi;
    double theta(std::size_t i) const;
    double phi(std::size_t j) const;
    bool hasCaps() const { return poles == PolePolicy::cap; }
};

// Cell-centred rectangle grid; cells with mask 0 are outside the domain.
struct PlanarMasked {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    std::vector<std::uint8_t> mask;  // nx * ny, empty means all inside
    double x(std::size_t i) const;
    double y(std::size_t j) const;
    bool inside(std::size_t i, std::size_t j) const {
        return mask.empty() || mask[i * ny + j] != 0;
    }
};

using DomainTopology = std::variant<TorusPeriodic, SphereLatLong, PlanarMasked>;

// Grid rows (first axis), columns (second axis) and extra cells (pole caps).
std::size_t gridRows(const DomainTopology& t);
std::size_t gridCols(const DomainTopology& t);
std::size_t extraCells(const DomainTopology& t);
std::size_t cellCount(const DomainTopology& t);
std::string topologyName(const DomainTopology& t);

// Values are row-major over (rows, cols); sphere caps follow as north, south.
struct ScalarField2D {
    DomainTopology topology;
    std::vector<double> values;
    std::string label;

    std::size_t rows() const { return gridRows(topology); }
    std::size_t cols() const { return gridCols(topology); }
    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols() + j]; }
};

struct ScalarField1D {
    Grid1DPeriodic grid;
    std::vector<double> values;
    std::string label;
};

// Throws SamplingError naming the first non-finite cell.
void requireFinite(const ScalarField2D& f);

ScalarField1D sample1d(const Grid1DPeriodic& grid, const std::function<double(double)>& f,
                       std::string label = {});

// Spectral second derivative of periodic samples. Exact for trigonometric
// polynomials of degree below n/2. Power-of-two sizes use the radix-2 FFT,
// other sizes the direct transform.
std::vector<double> secondDerivativePeriodic(std::span<const double> values, double period);
ScalarField1D secondDerivativePeriodic(const ScalarField1D& f);

ScalarField2D sampleTorus(std::size_t nx, std::size_t ny,
                          const std::function<double(double, double)>& f,
                          std::string label = {});

// Full-sphere sampling (nθ, nφ >= 16). Each cap holds the φ-average of f at
// θ = π/(4nθ) (resp. π − π/(4nθ)).
ScalarField2D sampleSphere(std::size_t ntheta, std::size_t nphi,
                           const std::function<double(double, double)>& f,
                           std::string label = {}, PolePolicy poles = PolePolicy::cap);

// Sampling of the band theta0 <= θ <= theta1 with open boundaries.
ScalarField2D sampleSphereBand(std::size_t ntheta, std::size_t nphi, double theta0,
                               double theta1, const std::function<double(double, double)>& f,
                               std::string label = {});

ScalarField2D samplePlanar(const PlanarMasked& grid,
                           const std::function<double(double, double)>& f,
                           std::string label = {});

}  // namespace speclab
