#include "speclab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;

Mesh2D refineTo(Mesh2D mesh, int level) {
    if (level < 0) throw std::invalid_argument("mesh: level must be >= 0");
    for (int k = 0; k < level; ++k) mesh = refine(mesh);
    return mesh;
}

void closeOutline(Mesh2D& mesh, const std::vector<int>& ring) {
    for (std::size_t k = 0; k < ring.size(); ++k) {
        mesh.outline.push_back(mesh.vertices[ring[k]]);
        mesh.boundaryEdges.push_back({ring[k], ring[(k + 1) % ring.size()]});
    }
}

}  // namespace

std::vector<std::uint8_t> Mesh2D::boundaryFlags() const {
    std::vector<std::uint8_t> f(vertices.size(), 0);
    for (const auto& e : boundaryEdges) f[e[0]] = f[e[1]] = 1;
    return f;
}

Mesh2D meshTriangle(double b, int level) {
    if (!(b > 0.0 && b <= 1.0)) throw std::invalid_argument("meshTriangle: need 0 < b <= 1");
    Mesh2D m;
    m.name = "triangle";
    // O, A, B, C
    m.vertices = {{0.0, 0.0}, {std::sqrt(3.0), 0.0}, {0.0, b}, {0.0, -b}};
    m.triangles = {{0, 1, 2}, {0, 3, 1}};
    m.boundaryEdges = {{3, 1}, {1, 2}, {2, 0}, {0, 3}};
    m.outline = {m.vertices[3], m.vertices[1], m.vertices[2]};
    return refineTo(std::move(m), level);
}

Mesh2D meshNgon(int N, int level) {
    if (N < 3) throw std::invalid_argument("meshNgon: N must be >= 3");
    Mesh2D m;
    m.name = "ngon";
    std::vector<int> outer;
    for (int k = 0; k < N; ++k) {
        const double t = 2.0 * kPi * k / N;
        outer.push_back(static_cast<int>(m.vertices.size()));
        m.vertices.push_back({std::cos(t), std::sin(t)});
    }
    closeOutline(m, outer);
    if (N > 24 && (N % 12 != 0 || ((N / 12) & (N / 12 - 1)) != 0))
        throw std::invalid_argument("meshNgon: N > 24 must be 12 * 2^k");
    std::vector<int> ring = outer;
    int count = N;
    double radius = 1.0;
    while (N > 24 && count > 12) {
        // Next ring at the even vertices' angles, one edge length inwards.
        const int next = count / 2;
        radius -= 2.0 * radius * std::sin(kPi / count);
        std::vector<int> inner;
        for (int k = 0; k < next; ++k) {
            const double t = 2.0 * kPi * k / next;
            inner.push_back(static_cast<int>(m.vertices.size()));
            m.vertices.push_back({radius * std::cos(t), radius * std::sin(t)});
        }
        for (int k = 0; k < next; ++k) {
            const int o0 = ring[2 * k], o1 = ring[2 * k + 1], o2 = ring[(2 * k + 2) % count];
            const int i0 = inner[k], i1 = inner[(k + 1) % next];
            m.triangles.push_back({o0, o1, i0});
            m.triangles.push_back({o1, o2, i1});
            m.triangles.push_back({i0, o1, i1});
        }
        ring = std::move(inner);
        count = next;
    }
    const int centre = static_cast<int>(m.vertices.size());
    m.vertices.push_back({0.0, 0.0});
    for (int k = 0; k < count; ++k) m.triangles.push_back({centre, ring[k], ring[(k + 1) % count]});
    return refineTo(std::move(m), level);
}

Mesh2D meshUnitSquare(int cells) {
    if (cells < 1) throw std::invalid_argument("meshUnitSquare: cells must be >= 1");
    Mesh2D m;
    m.name = "square";
    const int s = cells + 1;
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) m.vertices.push_back({static_cast<double>(i) / cells, static_cast<double>(j) / cells});
    for (int j = 0; j < cells; ++j)
        for (int i = 0; i < cells; ++i) {
            const int a = j * s + i, b = a + 1, c = a + s + 1, d = a + s;
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    std::vector<int> ring;
    for (int i = 0; i < cells; ++i) ring.push_back(i);
    for (int j = 0; j < cells; ++j) ring.push_back(j * s + cells);
    for (int i = cells; i > 0; --i) ring.push_back(cells * s + i);
    for (int j = cells; j > 0; --j) ring.push_back(j * s);
    for (std::size_t k = 0; k < ring.size(); ++k) m.boundaryEdges.push_back({ring[k], ring[(k + 1) % ring.size()]});
    m.outline = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    return m;
}

Mesh2D refine(const Mesh2D& mesh) {
    Mesh2D out;
    out.name = mesh.name;
    out.outline = mesh.outline;
    out.level = mesh.level + 1;
    out.vertices = mesh.vertices;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        const int idx = static_cast<int>(out.vertices.size());
        const Point2& p = mesh.vertices[a];
        const Point2& q = mesh.vertices[b];
        out.vertices.push_back({0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])});
        mid.emplace(key, idx);
        return idx;
    };
    out.triangles.reserve(mesh.triangles.size() * 4);
    for (const auto& t : mesh.triangles) {
        const int ab = midpoint(t[0], t[1]);
        const int bc = midpoint(t[1], t[2]);
        const int ca = midpoint(t[2], t[0]);
        out.triangles.push_back({t[0], ab, ca});
        out.triangles.push_back({ab, t[1], bc});
        out.triangles.push_back({ca, bc, t[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    for (const auto& e : mesh.boundaryEdges) {
        const int mdx = midpoint(e[0], e[1]);
        out.boundaryEdges.push_back({e[0], mdx});
        out.boundaryEdges.push_back({mdx, e[1]});
    }
    return out;
}

Mesh2D reflectY(const Mesh2D& mesh) {
    Mesh2D out = mesh;
    for (auto& v : out.vertices) v[1] = -v[1];
    for (auto& t : out.triangles) std::swap(t[1], t[2]);
    for (auto& e : out.boundaryEdges) std::swap(e[0], e[1]);
    for (auto& p : out.outline) p[1] = -p[1];
    std::reverse(out.outline.begin(), out.outline.end());
    return out;
}

double meshArea(const Mesh2D& mesh) {
    double a = 0.0;
    for (const auto& t : mesh.triangles) {
        const Point2 &p = mesh.vertices[t[0]], &q = mesh.vertices[t[1]], &r = mesh.vertices[t[2]];
        a += 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
    }
    return a;
}

double minAngleDegrees(const Mesh2D& mesh) {
    double best = 180.0;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const Point2& p = mesh.vertices[t[k]];
            const Point2& q = mesh.vertices[t[(k + 1) % 3]];
            const Point2& r = mesh.vertices[t[(k + 2) % 3]];
            const double ux = q[0] - p[0], uy = q[1] - p[1], vx = r[0] - p[0], vy = r[1] - p[1];
            const double ang = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
            best = std::min(best, ang * 180.0 / kPi);
        }
    }
    return best;
}

double maxEdgeLength(const Mesh2D& mesh) {
    double h = 0.0;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const Point2& p = mesh.vertices[t[k]];
            const Point2& q = mesh.vertices[t[(k + 1) % 3]];
            h = std::max(h, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
    return h;
}

int findVertex(const Mesh2D& mesh, Point2 p, double tol) {
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        if (std::abs(mesh.vertices[i][0] - p[0]) <= tol && std::abs(mesh.vertices[i][1] - p[1]) <= tol)
            return static_cast<int>(i);
    return -1;
}

}  // namespace speclab
