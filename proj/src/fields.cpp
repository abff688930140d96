#include "speclab/fields.hpp"

#include "speclab/error.hpp"
#include "speclab/fft.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

Grid1DPeriodic::Grid1DPeriodic(std::size_t n_, double period_) : n(n_), period(period_) {
    if (n < 8) throw std::invalid_argument("Grid1DPeriodic: n must be at least 8");
    if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument("Grid1DPeriodic: period must be positive");
}

double TorusPeriodic::x(std::size_t i) const {
    return kTwoPi * static_cast<double>(i) / static_cast<double>(nx);
}
double TorusPeriodic::y(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(ny);
}

double SphereLatLong::theta(std::size_t i) const {
    return theta0 + (static_cast<double>(i) + 0.5) * (theta1 - theta0) / static_cast<double>(ntheta);
}
double SphereLatLong::phi(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(nphi);
}

double PlanarMasked::x(std::size_t i) const {
    return x0 + (static_cast<double>(i) + 0.5) * (x1 - x0) / static_cast<double>(nx);
}
double PlanarMasked::y(std::size_t j) const {
    return y0 + (static_cast<double>(j) + 0.5) * (y1 - y0) / static_cast<double>(ny);
}

std::size_t gridRows(const DomainTopology& t) {
    return std::visit(Overloaded{[](const TorusPeriodic& g) { return g.nx; },
                                 [](const SphereLatLong& g) { return g.ntheta; },
                                 [](const PlanarMasked& g) { return g.nx; }},
                      t);
}

std::size_t gridCols(const DomainTopology& t) {
    return std::visit(Overloaded{[](const TorusPeriodic& g) { return g.ny; },
                                 [](const SphereLatLong& g) { return g.nphi; },
                                 [](const PlanarMasked& g) { return g.ny; }},
                      t);
}

std::size_t extraCells(const DomainTopology& t) {
    if (const auto* s = std::get_if<SphereLatLong>(&t)) return s->hasCaps() ? 2 : 0;
    return 0;
}

std::size_t cellCount(const DomainTopology& t) {
    return gridRows(t) * gridCols(t) + extraCells(t);
}

std::string topologyName(const DomainTopology& t) {
    return std::visit(Overloaded{[](const TorusPeriodic&) { return std::string("torus"); },
                                 [](const SphereLatLong&) { return std::string("sphere"); },
                                 [](const PlanarMasked&) { return std::string("planar"); }},
                      t);
}

void requireFinite(const ScalarField2D& f) {
    const std::size_t cols = f.cols();
    const std::size_t grid = f.rows() * cols;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (std::isfinite(f.values[k])) continue;
        if (k < grid)
            throw SamplingError("non-finite value in field '" + f.label + "' at cell (" +
                                std::to_string(k / cols) + ", " + std::to_string(k % cols) + ")");
        throw SamplingError("non-finite value in field '" + f.label + "' at pole cap " +
                            std::to_string(k - grid));
    }
}

ScalarField1D sample1d(const Grid1DPeriodic& grid, const std::function<double(double)>& f,
                       std::string label) {
    ScalarField1D out{grid, std::vector<double>(grid.n), std::move(label)};
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        const double v = f(x);
        if (!std::isfinite(v))
            throw SamplingError("non-finite sample at node " + std::to_string(j) +
                                " (x = " + std::to_string(x) + ")");
        out.values[j] = v;
    }
    return out;
}

std::vector<double> secondDerivativePeriodic(std::span<const double> values, double period) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("secondDerivativePeriodic: need at least 2 samples");
    std::vector<std::complex<double>> c(values.begin(), values.end());
    fft(c, false);
    const double scale = kTwoPi / period;
    for (std::size_t k = 0; k < n; ++k) {
        // Signed wavenumber; the Nyquist mode of even n keeps +n/2.
        const double w = (k <= n / 2) ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(n);
        c[k] *= -(w * scale) * (w * scale);
    }
    fft(c, true);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[k].real();
    return out;
}

ScalarField1D secondDerivativePeriodic(const ScalarField1D& f) {
    return {f.grid, secondDerivativePeriodic(f.values, f.grid.period), f.label + "''"};
}

ScalarField2D sampleTorus(std::size_t nx, std::size_t ny,
                          const std::function<double(double, double)>& f, std::string label) {
    if (nx < 4 || ny < 4) throw std::invalid_argument("sampleTorus: grid too small");
    TorusPeriodic topo{nx, ny};
    ScalarField2D out{topo, std::vector<double>(nx * ny), std::move(label)};
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) out.values[i * ny + j] = f(topo.x(i), topo.y(j));
    requireFinite(out);
    return out;
}

ScalarField2D sampleSphere(std::size_t ntheta, std::size_t nphi,
                           const std::function<double(double, double)>& f, std::string label,
                           PolePolicy poles) {
    if (ntheta < 16 || nphi < 16)
        throw std::invalid_argument("sampleSphere: need ntheta, nphi >= 16");
    SphereLatLong topo{ntheta, nphi, poles, 0.0, std::numbers::pi};
    ScalarField2D out{topo, std::vector<double>(ntheta * nphi + extraCells(topo)),
                      std::move(label)};
    for (std::size_t i = 0; i < ntheta; ++i) {
        const double th = topo.theta(i);
        for (std::size_t j = 0; j < nphi; ++j) out.values[i * nphi + j] = f(th, topo.phi(j));
    }
    if (topo.hasCaps()) {
        const double capTheta = std::numbers::pi / (4.0 * static_cast<double>(ntheta));
        double north = 0.0;
        double south = 0.0;
        for (std::size_t j = 0; j < nphi; ++j) {
            north += f(capTheta, topo.phi(j));
            south += f(std::numbers::pi - capTheta, topo.phi(j));
        }
        out.values[ntheta * nphi] = north / static_cast<double>(nphi);
        out.values[ntheta * nphi + 1] = south / static_cast<double>(nphi);
    }
    requireFinite(out);
    return out;
}

ScalarField2D sampleSphereBand(std::size_t ntheta, std::size_t nphi, double theta0,
                               double theta1, const std::function<double(double, double)>& f,
                               std::string label) {
    if (ntheta < 2 || nphi < 16) throw std::invalid_argument("sampleSphereBand: grid too small");
    if (!(0.0 <= theta0 && theta0 < theta1 && theta1 <= std::numbers::pi))
        throw std::invalid_argument("sampleSphereBand: need 0 <= theta0 < theta1 <= pi");
    SphereLatLong topo{ntheta, nphi, PolePolicy::open, theta0, theta1};
    ScalarField2D out{topo, std::vector<double>(ntheta * nphi), std::move(label)};
    for (std::size_t i = 0; i < ntheta; ++i) {
        const double th = topo.theta(i);
        for (std::size_t j = 0; j < nphi; ++j) out.values[i * nphi + j] = f(th, topo.phi(j));
    }
    requireFinite(out);
    return out;
}

ScalarField2D samplePlanar(const PlanarMasked& grid,
                           const std::function<double(double, double)>& f, std::string label) {
    if (!grid.mask.empty() && grid.mask.size() != grid.nx * grid.ny)
        throw std::invalid_argument("samplePlanar: mask size mismatch");
    ScalarField2D out{grid, std::vector<double>(grid.nx * grid.ny, 0.0), std::move(label)};
    for (std::size_t i = 0; i < grid.nx; ++i)
        for (std::size_t j = 0; j < grid.ny; ++j)
            if (grid.inside(i, j)) out.values[i * grid.ny + j] = f(grid.x(i), grid.y(j));
    requireFinite(out);
    return out;
}

}  // namespace speclab
