#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace speclab {

using Point2 = std::array<double, 2>;

// Positively oriented P1 triangulation of a polygon.
struct Mesh2D {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> boundaryEdges;
    std::vector<Point2> outline;  // the domain polygon, counter-clockwise
    int level = 0;
    std::string name;

    std::size_t vertexCount() const { return vertices.size(); }
    std::vector<std::uint8_t> boundaryFlags() const;
};

// T(b): vertices A = (sqrt 3, 0), B = (0, b), C = (0, -b), fanned from
// O = (0, 0) into OAB and OCA. Accepts 0 < b <= 1 (b = 1 is equilateral).
Mesh2D meshTriangle(double b, int level);

// Regular N-gon inscribed in the unit disk with a vertex at angle 0. Up to
// N = 24 this is the fan from the centre; beyond that the outer rings are
// halved (N -> N/2 -> ... -> 12) so no angle drops below 15 degrees, which
// needs N = 12 * 2^k for N > 24.
Mesh2D meshNgon(int N, int level);

// [0,1]^2 split along one diagonal per cell, `cells` per side.
Mesh2D meshUnitSquare(int cells);

// Uniform midpoint refinement (each triangle into four).
Mesh2D refine(const Mesh2D& mesh);

// Mirror image under y -> -y with orientation restored.
Mesh2D reflectY(const Mesh2D& mesh);

double meshArea(const Mesh2D& mesh);
double minAngleDegrees(const Mesh2D& mesh);
double maxEdgeLength(const Mesh2D& mesh);
// Index of the vertex at p within tol, or -1.
int findVertex(const Mesh2D& mesh, Point2 p, double tol = 1e-12);

}  // namespace speclab
