#include "speclab/fem.hpp"

#include "speclab/parallel.hpp"
#include "speclab/simd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace speclab {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    simd::csrMultiply(rowPtr, cols, vals, x, y);
}

std::string bcName(BoundaryCondition bc) {
    return bc == BoundaryCondition::neumann ? "neumann" : "dirichlet";
}

double indexHash(std::uint64_t seed, std::uint64_t i) {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

namespace {

struct Element {
    std::array<double, 9> k, m;
};

CsrMatrix buildCsr(std::size_t n, const std::vector<std::array<int, 3>>& tris,
                   const std::vector<Element>& el, bool stiffness) {
    // Pattern from the vertex adjacency, entries summed in triangle order.
    std::vector<std::vector<int>> adj(n);
    for (const auto& t : tris)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) adj[t[a]].push_back(t[b]);
    CsrMatrix A;
    A.rows = n;
    A.rowPtr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = adj[i];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        A.rowPtr[i + 1] = A.rowPtr[i] + static_cast<int>(r.size());
    }
    A.cols.reserve(A.rowPtr[n]);
    for (const auto& r : adj) A.cols.insert(A.cols.end(), r.begin(), r.end());
    A.vals.assign(A.cols.size(), 0.0);
    for (std::size_t e = 0; e < tris.size(); ++e) {
        const auto& t = tris[e];
        const auto& loc = stiffness ? el[e].k : el[e].m;
        for (int a = 0; a < 3; ++a) {
            const int row = t[a];
            const auto begin = A.cols.begin() + A.rowPtr[row];
            const auto end = A.cols.begin() + A.rowPtr[row + 1];
            for (int b = 0; b < 3; ++b) {
                const auto it = std::lower_bound(begin, end, t[b]);
                A.vals[it - A.cols.begin()] += loc[a * 3 + b];
            }
        }
    }
    return A;
}

}  // namespace

FemMatrices assembleP1(const Mesh2D& mesh) {
    const auto& V = mesh.vertices;
    std::vector<Element> el(mesh.triangles.size());
    parallelFor(mesh.triangles.size(), [&](std::size_t e) {
        const auto& t = mesh.triangles[e];
        const double x[3] = {V[t[0]][0], V[t[1]][0], V[t[2]][0]};
        const double y[3] = {V[t[0]][1], V[t[1]][1], V[t[2]][1]};
        const double area2 = (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
        if (!(area2 > 0.0)) throw std::invalid_argument("assembleP1: triangle not positively oriented");
        const double b[3] = {y[1] - y[2], y[2] - y[0], y[0] - y[1]};
        const double c[3] = {x[2] - x[1], x[0] - x[2], x[1] - x[0]};
        const double area = 0.5 * area2;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                el[e].k[i * 3 + j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
                el[e].m[i * 3 + j] = area / 12.0 * (i == j ? 2.0 : 1.0);
            }
    });
    return {buildCsr(V.size(), mesh.triangles, el, true), buildCsr(V.size(), mesh.triangles, el, false)};
}

CsrMatrix restrictMatrix(const CsrMatrix& a, const std::vector<int>& keep) {
    std::vector<int> map(a.rows, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) map[keep[k]] = static_cast<int>(k);
    CsrMatrix r;
    r.rows = keep.size();
    r.rowPtr.assign(keep.size() + 1, 0);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        const int row = keep[k];
        for (int p = a.rowPtr[row]; p < a.rowPtr[row + 1]; ++p) {
            const int c = map[a.cols[p]];
            if (c < 0) continue;
            r.cols.push_back(c);
            r.vals.push_back(a.vals[p]);
        }
        r.rowPtr[k + 1] = static_cast<int>(r.cols.size());
    }
    return r;
}

}  // namespace speclab
