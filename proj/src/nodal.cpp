#include "speclab/nodal.hpp"

#include "speclab/error.hpp"
#include "speclab/simd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace speclab {
namespace {

struct DisjointSets {
    std::vector<int> parent;
    std::vector<std::uint8_t> rank;

    explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
    }
};

struct AxisCoords {
    // Parameter coordinates of the first and second axis nodes.
    std::vector<double> c0, c1;
    bool wrap0 = false, wrap1 = false;
};

AxisCoords axisCoords(const DomainTopology& t) {
    AxisCoords a;
    const std::size_t r = gridRows(t);
    const std::size_t c = gridCols(t);
    a.c0.resize(r);
    a.c1.resize(c);
    if (const auto* g = std::get_if<TorusPeriodic>(&t)) {
        for (std::size_t i = 0; i < r; ++i) a.c0[i] = g->x(i);
        for (std::size_t j = 0; j < c; ++j) a.c1[j] = g->y(j);
        a.wrap0 = a.wrap1 = true;
    } else if (const auto* g = std::get_if<SphereLatLong>(&t)) {
        for (std::size_t i = 0; i < r; ++i) a.c0[i] = g->theta(i);
        for (std::size_t j = 0; j < c; ++j) a.c1[j] = g->phi(j);
        a.wrap1 = true;
    } else {
        const auto& p = std::get<PlanarMasked>(t);
        for (std::size_t i = 0; i < r; ++i) a.c0[i] = p.x(i);
        for (std::size_t j = 0; j < c; ++j) a.c1[j] = p.y(j);
    }
    return a;
}

bool inRange(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string resolutionOf(const ScalarField2D& f) {
    std::string s = std::to_string(f.rows()) + "x" + std::to_string(f.cols());
    if (extraCells(f.topology)) s += "+" + std::to_string(extraCells(f.topology));
    return s;
}

}  // namespace

std::string sideName(Side s) {
    switch (s) {
        case Side::above: return "above";
        case Side::below: return "below";
        case Side::bothNodal: return "both-nodal";
    }
    return "?";
}

Side parseSide(const std::string& s) {
    if (s == "above") return Side::above;
    if (s == "below") return Side::below;
    if (s == "both-nodal" || s == "both") return Side::bothNodal;
    throw std::invalid_argument("unknown side '" + s + "'");
}

Classification classifyCells(const ScalarField2D& f, double a, const NodalOptions& opts,
                             const std::optional<Subregion>& sub) {
    const std::size_t n = cellCount(f.topology);
    if (f.values.size() != n) throw std::invalid_argument("field value count does not match topology");
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    Classification c;
    c.active.assign(n, 1);
    if (const auto* p = std::get_if<PlanarMasked>(&f.topology); p && !p->mask.empty())
        for (std::size_t k = 0; k < rows * cols; ++k) c.active[k] = p->mask[k] ? 1 : 0;
    if (sub) {
        const AxisCoords ax = axisCoords(f.topology);
        for (std::size_t i = 0; i < rows; ++i) {
            const bool in0 = inRange(ax.c0[i], sub->lo0, sub->hi0);
            for (std::size_t j = 0; j < cols; ++j)
                if (!in0 || !inRange(ax.c1[j], sub->lo1, sub->hi1)) c.active[i * cols + j] = 0;
        }
        if (extraCells(f.topology)) {
            if (!(sub->lo0 <= 0.0)) c.active[rows * cols] = 0;
            if (!(sub->hi0 >= std::numbers::pi)) c.active[rows * cols + 1] = 0;
        }
    }
    double vmax = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (c.active[k]) vmax = std::max(vmax, std::abs(f.values[k]));
    const double tol = opts.relTolerance * vmax;
    c.cls.resize(n);
    simd::classify(f.values, a, tol, c.cls);
    for (std::size_t k = 0; k < n; ++k) {
        if (!c.active[k]) {
            c.cls[k] = 0;
            continue;
        }
        ++c.activeCells;
        if (c.cls[k] == 0) ++c.bandCells;
    }
    return c;
}

ComponentLabels labelComponents(const ScalarField2D& f, const Classification& c, std::int8_t sign,
                                Connectivity conn, const std::optional<Subregion>& sub) {
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    const std::size_t n = cellCount(f.topology);
    const AxisCoords ax = axisCoords(f.topology);
    // Wrapping is kept only when the subregion spans the whole axis.
    bool wrap0 = ax.wrap0;
    bool wrap1 = ax.wrap1;
    if (sub) {
        for (double v : ax.c0) wrap0 = wrap0 && inRange(v, sub->lo0, sub->hi0);
        for (double v : ax.c1) wrap1 = wrap1 && inRange(v, sub->lo1, sub->hi1);
    }
    DisjointSets ds(n);
    auto member = [&](std::size_t k) { return c.cls[k] == sign; };
    auto link = [&](std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) {
        const std::size_t a = i * cols + j;
        const std::size_t b = i2 * cols + j2;
        if (member(a) && member(b)) ds.unite(static_cast<int>(a), static_cast<int>(b));
    };
    const bool eight = conn == Connectivity::eight;
    for (std::size_t i = 0; i < rows; ++i) {
        const bool hasDown = i + 1 < rows || wrap0;
        const std::size_t id = (i + 1) % rows;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!member(i * cols + j)) continue;
            const bool hasRight = j + 1 < cols || wrap1;
            const std::size_t jr = (j + 1) % cols;
            if (hasRight) link(i, j, i, jr);
            if (hasDown) {
                link(i, j, id, j);
                if (eight) {
                    if (hasRight) link(i, j, id, jr);
                    if (j > 0 || wrap1) link(i, j, id, (j + cols - 1) % cols);
                }
            }
        }
    }
    if (extraCells(f.topology)) {
        const std::size_t north = rows * cols;
        const std::size_t south = north + 1;
        for (std::size_t j = 0; j < cols; ++j) {
            if (member(north) && member(j)) ds.unite(static_cast<int>(north), static_cast<int>(j));
            const std::size_t last = (rows - 1) * cols + j;
            if (member(south) && member(last)) ds.unite(static_cast<int>(south), static_cast<int>(last));
        }
    }
    ComponentLabels out;
    out.label.assign(n, -1);
    std::vector<int> rootLabel(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        if (!member(k)) continue;
        const int r = ds.find(static_cast<int>(k));
        if (rootLabel[r] < 0) {
            rootLabel[r] = static_cast<int>(out.sizes.size());
            out.sizes.push_back(0);
        }
        out.label[k] = rootLabel[r];
        ++out.sizes[rootLabel[r]];
    }
    return out;
}

namespace {

LevelSetReport countImpl(const ScalarField2D& f, double a, Side side, const NodalOptions& opts,
                         const std::optional<Subregion>& sub) {
    requireFinite(f);
    const Classification c = classifyCells(f, a, opts, sub);
    if (sub && c.activeCells == 0) throw std::invalid_argument("subregion contains no cells of the field");
    if (c.activeCells > 0 &&
        static_cast<double>(c.bandCells) > opts.maxBandFraction * static_cast<double>(c.activeCells))
        throw DegenerateThreshold("threshold " + std::to_string(a) + ": " + std::to_string(c.bandCells) +
                                  " of " + std::to_string(c.activeCells) +
                                  " cells lie within the equality tolerance");
    LevelSetReport r;
    r.threshold = a;
    r.side = side;
    r.resolution = resolutionOf(f);
    r.subregion = sub;
    r.bandCells = c.bandCells;
    auto add = [&](std::int8_t sign) {
        const ComponentLabels l = labelComponents(f, c, sign, opts.connectivity, sub);
        r.componentCells.insert(r.componentCells.end(), l.sizes.begin(), l.sizes.end());
    };
    if (side == Side::above || side == Side::bothNodal) add(1);
    if (side == Side::below || side == Side::bothNodal) add(-1);
    r.componentCount = r.componentCells.size();
    return r;
}

}  // namespace

LevelSetReport countLevelComponents(const ScalarField2D& f, double a, Side side,
                                    const NodalOptions& opts) {
    return countImpl(f, a, side, opts, std::nullopt);
}

LevelSetReport countNodalDomains(const ScalarField2D& f, const NodalOptions& opts) {
    return countImpl(f, 0.0, Side::bothNodal, opts, std::nullopt);
}

LevelSetReport componentCountInBand(const ScalarField2D& f, double a, Side side,
                                    const Subregion& sub, const NodalOptions& opts) {
    return countImpl(f, a, side, opts, sub);
}

}  // namespace speclab
