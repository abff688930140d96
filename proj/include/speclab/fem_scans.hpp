#pragma once

#include "speclab/fem.hpp"
#include "speclab/fields.hpp"
#include "speclab/nodal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclab {

// Cell -> (triangle, barycentric weights) over the outline's bounding box.
// Cells whose centre lies outside the outline polygon are masked out.
struct RasterMap {
    PlanarMasked grid;
    std::vector<int> triangle;  // -1 outside
    std::vector<std::array<double, 3>> weights;
    std::size_t uncovered = 0;  // inside the outline but in no triangle (masked out)
};
RasterMap buildRasterMap(const Mesh2D& mesh, std::size_t nx = 1024, std::size_t ny = 1024);
ScalarField2D rasterize(const Mesh2D& mesh, const RasterMap& map, const std::vector<double>& values,
                        std::string label = {});

bool pointInPolygon(const std::vector<Point2>& poly, Point2 p);
// Linear interpolation of vertex values at p; throws if p is not in the mesh.
double interpolateAt(const Mesh2D& mesh, const std::vector<double>& values, Point2 p);

// Nodal domains of u - a on the raster, split by side.
struct LevelDomainEntry {
    double threshold = 0.0;
    std::size_t above = 0, below = 0, total = 0;
    std::string regime;  // relative to min u, u(O) = 1 and max u
};
struct LevelDomainScan {
    Point2 normalizePoint{};
    double scale = 0.0;  // u is divided by this raw value at the point
    double minU = 0.0, maxU = 0.0;
    std::vector<LevelDomainEntry> entries;
};
// Normalises u(point) = 1 and counts for each threshold. |u(point)| below
// 1e-6 max|u| is a normalisation error.
LevelDomainScan levelDomainScan(const Mesh2D& mesh, const RasterMap& map, const FemEigenpair& pair,
                                Point2 normalizePoint, const std::vector<double>& thresholds);

// Properties of the second Neumann eigenfunction of T(b).
struct MiyamotoReport {
    double b = 0.0;
    double nu2 = 0.0, nu3 = 0.0;
    double evenness = 0.0;  // max |u(x,y) - u(x,-y)| / max|u| on the raster
    double uA = 0.0, uO = 0.0, uB = 0.0, uC = 0.0;  // normalised u(O) = 1
    bool evenPass = false, signPass = false, criticalPass = false;
    double radius = 0.0;  // critical points must lie within this of O, A, B, C
    std::size_t nearO = 0, nearA = 0, nearB = 0, nearC = 0, stray = 0;
    bool pass = false;
};
MiyamotoReport miyamotoAudit(const Mesh2D& mesh, const RasterMap& map, const std::vector<FemEigenpair>& pairs,
                             double b);
// Fixed-precision text; invariant under the mesh reflection y -> -y.
std::string formatMiyamoto(const MiyamotoReport& r);

// Discrete critical vertices: extrema and saddles of the vertex graph.
struct CriticalVertex {
    int vertex;
    enum Kind { minimum, maximum, saddle } kind;
};
std::vector<CriticalVertex> criticalVertices(const Mesh2D& mesh, const std::vector<double>& u);

// Positive components of u_n + c u_1 for Dirichlet pairs (u_1 > 0).
struct GladwellZhuEntry {
    int n = 0;
    double c = 0.0;
    std::size_t count = 0;
    std::size_t bound = 0;  // n - 1
    bool pass = false;
};
struct GladwellZhuReport {
    std::vector<GladwellZhuEntry> entries;
    bool pass = false;
};
GladwellZhuReport gladwellZhuCheck(const Mesh2D& mesh, const RasterMap& map,
                                   const std::vector<FemEigenpair>& dirichlet, int nMax,
                                   const std::vector<double>& cList);

// Gap test for the simplicity of nu_j at two refinement levels and their
// extrapolation: both relative gaps must exceed `threshold` everywhere.
struct SimplicityCertificate {
    int index = 0;
    double coarse = 0.0, fine = 0.0, extrapolated = 0.0;
    double gapBelow = 0.0, gapAbove = 0.0;  // minimum over the three estimates
    bool pass = false;
};
SimplicityCertificate certifySimple(const std::vector<double>& coarse, const std::vector<double>& fine, int j,
                                    double threshold = 0.02);

// Components of {u > a} (or {u < a}) of the P1 interpolant itself: the
// superlevel set meets each triangle in a convex piece, so these are the
// components of the subgraph induced by the vertices strictly above a.
std::size_t meshLevelComponents(const Mesh2D& mesh, const std::vector<double>& u, double a, Side side);

// Nodal domains of the j-th eigenfunction (Courant: at most j).
std::size_t nodalDomainCount(const Mesh2D& mesh, const RasterMap& map, const FemEigenpair& pair);

}  // namespace speclab
