#include "speclab/poly_nodal.hpp"

#include "speclab/error.hpp"
#include "speclab/fem.hpp"
#include "speclab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;

struct DisjointSet {
    std::vector<int> p;
    explicit DisjointSet(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

double singularBandFor(double minAngle) {
    if (!(minAngle > 0.0) || minAngle > kPi / 2.0) throw std::invalid_argument("singularBandFor: angle out of (0, pi/2]");
    return 1.0 / std::sqrt(1.0 - std::abs(std::cos(minAngle))) + 0.5;
}

PlaneNodalReport countPlaneNodal(const std::function<double(double, double)>& f, double R,
                                 std::size_t resolution, double singularBand) {
    if (!(R > 0.0) || resolution < 16) throw std::invalid_argument("countPlaneNodal: bad window");
    const std::size_t n = resolution;
    PlanarMasked grid{n, n, -R, R, -R, R, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            grid.mask[i * n + j] = std::hypot(grid.x(i), grid.y(j)) < R ? 1 : 0;
    ScalarField2D field = samplePlanar(grid, f, "plane");
    if (singularBand > 0.0) {
        const double h = 2.0 * R / n;
        const double d = h / 8.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t k = i * n + j;
                if (!grid.mask[k]) continue;
                const double x = grid.x(i), y = grid.y(j);
                const double gx = (f(x + d, y) - f(x - d, y)) / (2.0 * d);
                const double gy = (f(x, y + d) - f(x, y - d)) / (2.0 * d);
                if (std::abs(field.values[k]) < singularBand * 0.5 * h * std::hypot(gx, gy)) field.values[k] = 0.0;
            }
    }

    // Sign arcs on the boundary circle.
    const std::size_t samples = 8 * n;
    std::vector<int> sgn(samples);
    bool any = false;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * kPi * (k + 0.5) / samples;
        const double v = f(R * std::cos(t), R * std::sin(t));
        sgn[k] = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        any = any || sgn[k] != 0;
    }
    if (!any) throw ConstructionError("countPlaneNodal: inconclusive, f vanishes on the boundary circle");
    // Zero samples inherit the previous sign so arcs stay contiguous.
    std::size_t first = 0;
    while (sgn[first] == 0) ++first;
    for (std::size_t k = 1; k <= samples; ++k) {
        const std::size_t idx = (first + k) % samples;
        if (sgn[idx] == 0) sgn[idx] = sgn[(idx + samples - 1) % samples];
    }
    std::vector<int> arc(samples);
    int arcs = 0;
    std::size_t start = 0;
    while (start < samples && sgn[start] == sgn[(start + samples - 1) % samples]) ++start;
    if (start == samples) {
        arcs = 1;
        std::fill(arc.begin(), arc.end(), 0);
    } else {
        for (std::size_t k = 0; k < samples; ++k) {
            const std::size_t idx = (start + k) % samples;
            if (k > 0 && sgn[idx] != sgn[(idx + samples - 1) % samples]) ++arcs;
            arc[idx] = arcs;
        }
        ++arcs;
    }

    NodalOptions opts;
    opts.relTolerance = 0.0;
    const Classification cls = classifyCells(field, 0.0, opts);
    PlaneNodalReport rep;
    rep.radius = R;
    rep.resolution = n;
    rep.arcs = static_cast<std::size_t>(arcs);
    rep.bandCells = cls.bandCells;
    for (const std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
        const ComponentLabels lab = labelComponents(field, cls, s, Connectivity::four);
        const std::size_t L = lab.sizes.size();
        DisjointSet ds(L + static_cast<std::size_t>(arcs));
        std::vector<char> touches(L, 0);
        // With a singular band, slivers cut off at crossing tips have no cell
        // whose four neighbours share its sign; they are not counted.
        std::vector<char> resolved(L, singularBand > 0.0 ? 0 : 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t k = i * n + j;
                const int l = lab.label[k];
                if (l < 0) continue;
                if (!resolved[l] && i > 0 && j > 0 && i + 1 < n && j + 1 < n && cls.cls[k - n] == s &&
                    cls.cls[k + n] == s && cls.cls[k - 1] == s && cls.cls[k + 1] == s)
                    resolved[l] = 1;
                const bool edge = i == 0 || j == 0 || i + 1 == n || j + 1 == n || !grid.mask[k - n] ||
                                  !grid.mask[k + n] || !grid.mask[k - 1] || !grid.mask[k + 1];
                if (!edge) continue;
                double t = std::atan2(grid.y(j), grid.x(i));
                if (t < 0.0) t += 2.0 * kPi;
                const std::size_t idx = std::min(samples - 1, static_cast<std::size_t>(t / (2.0 * kPi) * samples));
                if (sgn[idx] != s) continue;
                ds.unite(l, static_cast<int>(L) + arc[idx]);
                touches[l] = 1;
            }
        std::size_t count = 0, unbounded = 0;
        std::vector<char> seenRoot(L + arcs, 0);
        for (std::size_t l = 0; l < L; ++l) {
            if (!resolved[l]) continue;
            const int r = ds.find(static_cast<int>(l));
            if (seenRoot[r]) continue;
            seenRoot[r] = 1;
            ++count;
            if (touches[l]) ++unbounded;
        }
        (s > 0 ? rep.positive : rep.negative) = count;
        rep.unbounded += unbounded;
    }
    rep.total = rep.positive + rep.negative;
    return rep;
}

PlaneNodalReport countPolyNodalPlane(const Poly2& p, double R, std::size_t resolution, double singularBand) {
    return countPlaneNodal([&](double x, double y) { return p(x, y); }, R, resolution, singularBand);
}

PlaneNodalReport countQhoFull(const Poly2& p, double R, std::size_t resolution, double singularBand) {
    return countPlaneNodal([&](double x, double y) { return std::exp(-0.5 * (x * x + y * y)) * p(x, y); }, R,
                           resolution, singularBand);
}

SphereBoundReport countPolyOnSphere(const Poly3& p, std::size_t ntheta, std::size_t nphi) {
    const ScalarField2D f = sampleSphere(
        ntheta, nphi,
        [&](double th, double ph) {
            const double s = std::sin(th);
            return p(s * std::cos(ph), s * std::sin(ph), std::cos(th));
        },
        "sphere-poly", PolePolicy::open);
    double big = 0.0;
    for (double v : f.values) big = std::max(big, std::abs(v));
    if (!(big > 0.0)) throw ConstructionError("countPolyOnSphere: inconclusive, restriction vanishes");
    NodalOptions opts;
    opts.relTolerance = 0.0;
    SphereBoundReport r;
    const LevelSetReport rep = countNodalDomains(f, opts);
    r.count = rep.componentCount;
    r.resolution = rep.resolution;
    r.degree = p.degree;
    r.bound8 = static_cast<std::size_t>(8 * p.degree * p.degree);
    r.bound32 = static_cast<std::size_t>(32 * p.degree * p.degree);
    r.pass8 = r.count <= r.bound8;
    r.pass32 = r.count <= r.bound32;
    return r;
}

std::vector<double> qhoTrialCoefficients(int n, int trial) {
    std::vector<double> c(n);
    const std::uint64_t seed = 0x9a0ULL * 1000003ULL + 1000ULL * n + static_cast<std::uint64_t>(trial);
    for (int i = 0; i < n; ++i) c[i] = indexHash(seed, static_cast<std::uint64_t>(i));
    return c;
}

QhoTrialSummary qhoTrials(int n, int trials, std::size_t resolution, int firstTrial) {
    QhoTrialSummary s;
    s.n = n;
    s.trials = trials;
    s.counts.assign(trials, 0);
    parallelFor(static_cast<std::size_t>(trials), [&](std::size_t t) {
        const QhoCombination q = qhoCombination(qhoTrialCoefficients(n, firstTrial + static_cast<int>(t)));
        s.counts[t] = countPolyNodalPlane(q.poly, q.windowRadius, resolution).total;
    });
    for (std::size_t c : s.counts) {
        s.maxCount = std::max(s.maxCount, c);
        if (c > static_cast<std::size_t>(n)) ++s.violations;
    }
    return s;
}

SphereTrialSummary sphereTrials(int degree, int trials, std::size_t ntheta, std::size_t nphi, int firstTrial) {
    SphereTrialSummary s;
    s.degree = degree;
    s.trials = trials;
    s.counts.assign(trials, 0);
    parallelFor(static_cast<std::size_t>(trials), [&](std::size_t t) {
        const Poly3 p = randomHarmonic(degree, 2 * degree + 1, 0x5be7ULL * 7919ULL + static_cast<std::uint64_t>(firstTrial) + t);
        s.counts[t] = countPolyOnSphere(p, ntheta, nphi).count;
    });
    for (std::size_t c : s.counts) {
        s.maxCount = std::max(s.maxCount, c);
        if (c > static_cast<std::size_t>(8 * degree * degree)) ++s.over8;
        if (c > static_cast<std::size_t>(degree * degree + 1)) ++s.overEcp;
    }
    return s;
}

}  // namespace speclab
