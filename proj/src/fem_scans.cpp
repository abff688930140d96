#include "speclab/fem_scans.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace speclab {
namespace {

bool barycentric(const Mesh2D& mesh, const std::array<int, 3>& t, Point2 p, std::array<double, 3>& w) {
    const Point2& a = mesh.vertices[t[0]];
    const Point2& b = mesh.vertices[t[1]];
    const Point2& c = mesh.vertices[t[2]];
    const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    const double l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (p[1] - a[1])) / det;
    const double l2 = ((b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])) / det;
    const double l0 = 1.0 - l1 - l2;
    const double tol = -1e-12;
    if (l0 < tol || l1 < tol || l2 < tol) return false;
    w = {l0, l1, l2};
    return true;
}

double maxAbs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

bool pointInPolygon(const std::vector<Point2>& poly, Point2 p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point2& a = poly[i];
        const Point2& b = poly[j];
        if ((a[1] > p[1]) != (b[1] > p[1]) &&
            p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0])
            in = !in;
    }
    return in;
}

RasterMap buildRasterMap(const Mesh2D& mesh, std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("buildRasterMap: grid too small");
    if (mesh.outline.size() < 3) throw std::invalid_argument("buildRasterMap: mesh has no outline");
    RasterMap r;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& p : mesh.outline) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    r.grid = PlanarMasked{nx, ny, x0, x1, y0, y1, std::vector<std::uint8_t>(nx * ny, 0)};
    r.triangle.assign(nx * ny, -1);
    r.weights.assign(nx * ny, {0.0, 0.0, 0.0});
    const double dx = (x1 - x0) / nx, dy = (y1 - y0) / ny;
    for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
        const auto& t = mesh.triangles[e];
        double tx0 = x1, tx1 = x0, ty0 = y1, ty1 = y0;
        for (int k = 0; k < 3; ++k) {
            tx0 = std::min(tx0, mesh.vertices[t[k]][0]);
            tx1 = std::max(tx1, mesh.vertices[t[k]][0]);
            ty0 = std::min(ty0, mesh.vertices[t[k]][1]);
            ty1 = std::max(ty1, mesh.vertices[t[k]][1]);
        }
        const long i0 = std::max(0L, static_cast<long>(std::ceil((tx0 - x0) / dx - 0.5)) - 1);
        const long i1 = std::min(static_cast<long>(nx) - 1, static_cast<long>(std::floor((tx1 - x0) / dx - 0.5)) + 1);
        const long j0 = std::max(0L, static_cast<long>(std::ceil((ty0 - y0) / dy - 0.5)) - 1);
        const long j1 = std::min(static_cast<long>(ny) - 1, static_cast<long>(std::floor((ty1 - y0) / dy - 0.5)) + 1);
        for (long i = i0; i <= i1; ++i)
            for (long j = j0; j <= j1; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * ny + j;
                if (r.triangle[k] >= 0) continue;
                std::array<double, 3> w;
                if (barycentric(mesh, t, {r.grid.x(i), r.grid.y(j)}, w)) {
                    r.triangle[k] = static_cast<int>(e);
                    r.weights[k] = w;
                }
            }
    }
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t k = i * ny + j;
            if (!pointInPolygon(mesh.outline, {r.grid.x(i), r.grid.y(j)})) continue;
            if (r.triangle[k] < 0) {
                ++r.uncovered;
                continue;
            }
            r.grid.mask[k] = 1;
        }
    return r;
}

ScalarField2D rasterize(const Mesh2D& mesh, const RasterMap& map, const std::vector<double>& values,
                        std::string label) {
    if (values.size() != mesh.vertexCount()) throw std::invalid_argument("rasterize: value count mismatch");
    ScalarField2D f{map.grid, std::vector<double>(map.triangle.size(), 0.0), std::move(label)};
    for (std::size_t k = 0; k < map.triangle.size(); ++k) {
        if (!map.grid.mask[k]) continue;
        const auto& t = mesh.triangles[map.triangle[k]];
        const auto& w = map.weights[k];
        f.values[k] = w[0] * values[t[0]] + w[1] * values[t[1]] + w[2] * values[t[2]];
    }
    return f;
}

double interpolateAt(const Mesh2D& mesh, const std::vector<double>& values, Point2 p) {
    const int v = findVertex(mesh, p);
    if (v >= 0) return values[v];
    for (const auto& t : mesh.triangles) {
        std::array<double, 3> w;
        if (barycentric(mesh, t, p, w)) return w[0] * values[t[0]] + w[1] * values[t[1]] + w[2] * values[t[2]];
    }
    throw std::invalid_argument("interpolateAt: point outside the mesh");
}

LevelDomainScan levelDomainScan(const Mesh2D& mesh, const RasterMap& map, const FemEigenpair& pair,
                                Point2 normalizePoint, const std::vector<double>& thresholds) {
    LevelDomainScan s;
    s.normalizePoint = normalizePoint;
    s.scale = interpolateAt(mesh, pair.values, normalizePoint);
    if (std::abs(s.scale) < 1e-6 * maxAbs(pair.values))
        throw GuardViolation("levelDomainScan: u vanishes at the normalisation point");
    std::vector<double> u(pair.values);
    for (double& x : u) x /= s.scale;
    s.minU = *std::min_element(u.begin(), u.end());
    s.maxU = *std::max_element(u.begin(), u.end());
    const ScalarField2D f = rasterize(mesh, map, u, "u");
    for (double a : thresholds) {
        LevelDomainEntry e;
        e.threshold = a;
        e.above = countLevelComponents(f, a, Side::above).componentCount;
        e.below = countLevelComponents(f, a, Side::below).componentCount;
        e.total = e.above + e.below;
        if (a <= s.minU || a >= s.maxU) e.regime = "outside range";
        else if (a < 1.0) e.regime = "min u < a < u(O)";
        else if (a == 1.0) e.regime = "a = u(O)";
        else e.regime = "u(O) < a < max u";
        s.entries.push_back(e);
    }
    return s;
}

std::vector<CriticalVertex> criticalVertices(const Mesh2D& mesh, const std::vector<double>& u) {
    const std::size_t n = mesh.vertexCount();
    // Link of each vertex as directed edges from -> to (counter-clockwise).
    std::vector<std::vector<std::pair<int, int>>> link(n);
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) link[t[k]].emplace_back(t[(k + 1) % 3], t[(k + 2) % 3]);
    std::vector<CriticalVertex> out;
    for (std::size_t v = 0; v < n; ++v) {
        std::map<int, int> next;
        std::map<int, int> indeg;
        for (const auto& [a, b] : link[v]) {
            next[a] = b;
            ++indeg[b];
        }
        int start = link[v].front().first;
        bool boundary = false;
        for (const auto& [a, b] : next)
            if (!indeg.count(a)) {
                start = a;
                boundary = true;
                break;
            }
        std::vector<int> ring{start};
        for (int cur = start; next.count(cur) && ring.size() <= next.size();) {
            cur = next[cur];
            if (cur == start) break;
            ring.push_back(cur);
        }
        // Ties broken by index (simulation of simplicity).
        auto above = [&](int w) { return u[w] > u[v] || (u[w] == u[v] && w > static_cast<int>(v)); };
        int changes = 0;
        const std::size_t m = ring.size();
        for (std::size_t k = 0; k + 1 < m; ++k) changes += above(ring[k]) != above(ring[k + 1]);
        if (!boundary) changes += above(ring[m - 1]) != above(ring[0]);
        if (changes == 0)
            out.push_back({static_cast<int>(v), above(ring[0]) ? CriticalVertex::minimum : CriticalVertex::maximum});
        else if ((!boundary && changes >= 4) || (boundary && changes >= 2))
            out.push_back({static_cast<int>(v), CriticalVertex::saddle});
    }
    return out;
}

MiyamotoReport miyamotoAudit(const Mesh2D& mesh, const RasterMap& map, const std::vector<FemEigenpair>& pairs,
                             double b) {
    if (pairs.size() < 3) throw std::invalid_argument("miyamotoAudit: need the first three Neumann pairs");
    MiyamotoReport r;
    r.b = b;
    r.nu2 = pairs[1].value;
    r.nu3 = pairs[2].value;
    const Point2 O{0.0, 0.0}, A{std::sqrt(3.0), 0.0}, B{0.0, b}, C{0.0, -b};
    const double scale = interpolateAt(mesh, pairs[1].values, O);
    if (std::abs(scale) < 1e-6 * maxAbs(pairs[1].values))
        throw GuardViolation("miyamotoAudit: u vanishes at O");
    std::vector<double> u(pairs[1].values);
    for (double& x : u) x /= scale;
    r.uO = 1.0;
    r.uA = interpolateAt(mesh, u, A);
    r.uB = interpolateAt(mesh, u, B);
    r.uC = interpolateAt(mesh, u, C);
    const double umax = maxAbs(u);

    const ScalarField2D f = rasterize(mesh, map, u);
    const std::size_t nx = map.grid.nx, ny = map.grid.ny;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t k = i * ny + j, kr = i * ny + (ny - 1 - j);
            if (map.grid.mask[k] && map.grid.mask[kr])
                r.evenness = std::max(r.evenness, std::abs(f.values[k] - f.values[kr]));
        }
    r.evenness /= umax;
    r.evenPass = r.evenness < 1e-3;
    r.signPass = r.uA < 0.0 && 0.0 < r.uO && r.uO < std::min(r.uB, r.uC);

    r.radius = 3.0 * maxEdgeLength(mesh);
    for (const auto& cv : criticalVertices(mesh, u)) {
        const Point2& p = mesh.vertices[cv.vertex];
        auto near = [&](Point2 q) { return std::hypot(p[0] - q[0], p[1] - q[1]) <= r.radius; };
        if (near(O)) ++r.nearO;
        else if (near(A)) ++r.nearA;
        else if (near(B)) ++r.nearB;
        else if (near(C)) ++r.nearC;
        else ++r.stray;
    }
    r.criticalPass = r.stray == 0 && r.nearO > 0 && r.nearA > 0 && r.nearB > 0 && r.nearC > 0;
    r.pass = r.evenPass && r.signPass && r.criticalPass;
    return r;
}

std::string formatMiyamoto(const MiyamotoReport& r) {
    char buf[1024];
    std::snprintf(buf, sizeof buf,
                  "b = %.6g\nnu2 = %.6f\nnu3 = %.6f\ngap = %.4f\nevenness = %.1e (%s)\n"
                  "u(A) = %.5f\nu(O) = %.5f\nu(B), u(C) = %.5f, %.5f\nsign pattern: %s\n"
                  "critical radius = %.3e\ncritical near O = %zu, A = %zu, B/C = %zu/%zu, stray = %zu (%s)\n"
                  "overall: %s\n",
                  r.b, r.nu2, r.nu3, (r.nu3 - r.nu2) / r.nu2, r.evenness, r.evenPass ? "pass" : "FAIL", r.uA, r.uO,
                  std::max(r.uB, r.uC), std::min(r.uB, r.uC), r.signPass ? "pass" : "FAIL", r.radius, r.nearO,
                  r.nearA, std::max(r.nearB, r.nearC), std::min(r.nearB, r.nearC), r.stray,
                  r.criticalPass ? "pass" : "FAIL", r.pass ? "pass" : "FAIL");
    return buf;
}

GladwellZhuReport gladwellZhuCheck(const Mesh2D& mesh, const RasterMap& map,
                                   const std::vector<FemEigenpair>& dirichlet, int nMax,
                                   const std::vector<double>& cList) {
    if (nMax < 2 || static_cast<std::size_t>(nMax) > dirichlet.size())
        throw std::invalid_argument("gladwellZhuCheck: need 2 <= nMax <= pair count");
    std::vector<double> u1 = dirichlet[0].values;
    double sum = 0.0;
    for (double x : u1) sum += x;
    if (sum < 0.0)
        for (double& x : u1) x = -x;
    GladwellZhuReport rep;
    rep.pass = true;
    for (int n = 2; n <= nMax; ++n)
        for (double c : cList) {
            std::vector<double> v(u1.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = dirichlet[n - 1].values[i] + c * u1[i];
            const ScalarField2D f = rasterize(mesh, map, v);
            GladwellZhuEntry e;
            e.n = n;
            e.c = c;
            e.count = countLevelComponents(f, 0.0, c > 0.0 ? Side::above : Side::below).componentCount;
            e.bound = static_cast<std::size_t>(n - 1);
            e.pass = e.count <= e.bound;
            rep.pass = rep.pass && e.pass;
            rep.entries.push_back(e);
        }
    return rep;
}

SimplicityCertificate certifySimple(const std::vector<double>& coarse, const std::vector<double>& fine, int j,
                                    double threshold) {
    if (j < 2 || static_cast<std::size_t>(j) >= std::min(coarse.size(), fine.size()))
        throw std::invalid_argument("certifySimple: need neighbours on both sides");
    SimplicityCertificate c;
    c.index = j;
    c.coarse = coarse[j - 1];
    c.fine = fine[j - 1];
    c.extrapolated = richardson(c.coarse, c.fine);
    c.gapBelow = c.gapAbove = std::numeric_limits<double>::infinity();
    for (int level = 0; level < 3; ++level) {
        auto val = [&](int k) {
            if (level == 0) return coarse[k - 1];
            if (level == 1) return fine[k - 1];
            return richardson(coarse[k - 1], fine[k - 1]);
        };
        const double v = val(j);
        c.gapBelow = std::min(c.gapBelow, (v - val(j - 1)) / v);
        c.gapAbove = std::min(c.gapAbove, (val(j + 1) - v) / v);
    }
    c.pass = c.gapBelow > threshold && c.gapAbove > threshold;
    return c;
}

std::size_t meshLevelComponents(const Mesh2D& mesh, const std::vector<double>& u, double a, Side side) {
    if (side == Side::bothNodal) throw std::invalid_argument("meshLevelComponents: side must be above or below");
    const std::size_t n = mesh.vertexCount();
    auto in = [&](int v) { return side == Side::above ? u[v] > a : u[v] < a; };
    std::vector<int> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const int p = t[k], q = t[(k + 1) % 3];
            if (in(p) && in(q)) parent[find(p)] = find(q);
        }
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (in(static_cast<int>(i)) && find(static_cast<int>(i)) == static_cast<int>(i)) ++count;
    return count;
}

std::size_t nodalDomainCount(const Mesh2D& mesh, const RasterMap& map, const FemEigenpair& pair) {
    return countNodalDomains(rasterize(mesh, map, pair.values)).componentCount;
}

}  // namespace speclab
