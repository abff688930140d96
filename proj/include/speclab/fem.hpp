#pragma once

#include "speclab/mesh.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace speclab {

struct CsrMatrix {
    std::size_t rows = 0;
    std::vector<int> rowPtr;
    std::vector<int> cols;
    std::vector<double> vals;
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::size_t nonZeros() const { return vals.size(); }
};

// P1 stiffness K and consistent mass M. Element matrices are computed in
// parallel and summed in triangle order.
struct FemMatrices {
    CsrMatrix K, M;
};
FemMatrices assembleP1(const Mesh2D& mesh);

// Rows and columns listed in keep, in that order.
CsrMatrix restrictMatrix(const CsrMatrix& a, const std::vector<int>& keep);

enum class BoundaryCondition { neumann, dirichlet };
std::string bcName(BoundaryCondition bc);

struct FemEigenpair {
    int index = 0;  // 1-based
    double value = 0.0;
    std::vector<double> values;  // per vertex; zero on a Dirichlet boundary
    BoundaryCondition bc = BoundaryCondition::neumann;
    std::string normalization;
    double residual = 0.0;  // |K u - nu M u| / |M u|
};

struct LanczosOptions {
    int blockSize = 4;
    double tolerance = 1e-13;  // Ritz residual relative to the Ritz value of the shifted operator
    int maxBlocks = 60;
    int restarts = 3;
    std::uint64_t seed = 0x5eed;
};

// Lowest `count` eigenpairs of K x = nu M x by block shift-invert Lanczos
// with full M-reorthogonalisation around sigma (below the spectrum).
struct PencilResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // M-orthonormal
    std::vector<double> residuals;
    int restartsUsed = 0;
    int basisSize = 0;
};
PencilResult solvePencil(const CsrMatrix& K, const CsrMatrix& M, int count, double sigma,
                         const LanczosOptions& opts = {});

// count <= vertexCount / 10. Neumann shifts by -1, Dirichlet by 0 after
// eliminating the boundary vertices.
std::vector<FemEigenpair> solveNeumann(const Mesh2D& mesh, int count, const LanczosOptions& opts = {});
std::vector<FemEigenpair> solveDirichlet(const Mesh2D& mesh, int count, const LanczosOptions& opts = {});

// Two-level extrapolation for an O(h^2) quantity under halving of h.
inline double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

// Deterministic unit-range hash of an index (start vectors, trial seeds).
double indexHash(std::uint64_t seed, std::uint64_t i);

}  // namespace speclab
