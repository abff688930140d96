#include "speclab/fem.hpp"

#include "speclab/error.hpp"
#include "speclab/simd.hpp"
#include "speclab/symmetric_eigen.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace speclab {
namespace {

using Vec = std::vector<double>;

Eigen::SparseMatrix<double> shiftedMatrix(const CsrMatrix& K, const CsrMatrix& M, double sigma) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(K.nonZeros() + M.nonZeros());
    for (std::size_t r = 0; r < K.rows; ++r) {
        for (int p = K.rowPtr[r]; p < K.rowPtr[r + 1]; ++p) trip.emplace_back(r, K.cols[p], K.vals[p]);
        for (int p = M.rowPtr[r]; p < M.rowPtr[r + 1]; ++p) trip.emplace_back(r, M.cols[p], -sigma * M.vals[p]);
    }
    Eigen::SparseMatrix<double> A(K.rows, K.rows);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

struct Workspace {
    const CsrMatrix& M;
    Vec tmp;
    double mdot(const Vec& a, const Vec& b) {
        M.multiply(b, tmp);
        return simd::dot(a, tmp);
    }
};

// Removes the components along basis (M-orthonormal) twice; returns the
// accumulated coefficients.
Vec orthogonalize(Vec& w, const std::vector<Vec>& basis, Workspace& ws) {
    Vec coef(basis.size(), 0.0);
    Vec mw(w.size());
    for (int pass = 0; pass < 2; ++pass) {
        ws.M.multiply(w, mw);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const double c = simd::dot(basis[i], mw);
            coef[i] += c;
            simd::axpy(-c, basis[i], w);
        }
    }
    return coef;
}

}  // namespace

PencilResult solvePencil(const CsrMatrix& K, const CsrMatrix& M, int count, double sigma,
                         const LanczosOptions& opts) {
    const std::size_t n = K.rows;
    if (count < 1 || static_cast<std::size_t>(count) > n) throw std::invalid_argument("solvePencil: bad count");
    const int b = std::max(1, opts.blockSize);
    const Eigen::SparseMatrix<double> A = shiftedMatrix(K, M, sigma);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("solvePencil: factorisation of K - sigma M failed");

    Workspace ws{M, Vec(n)};
    Eigen::VectorXd rhs(n), sol(n);
    auto applyOp = [&](const Vec& v) {
        Vec mv(n);
        M.multiply(v, mv);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = mv[i];
        sol = ldlt.solve(rhs);
        return Vec(sol.data(), sol.data() + n);
    };

    for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
        const std::uint64_t seed = opts.seed + 7919ULL * attempt;
        std::uint64_t fresh = 0;
        auto randomVector = [&]() {
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = indexHash(seed + fresh, i);
            ++fresh;
            return v;
        };
        std::vector<Vec> basis;
        // Normalizes w against basis; falls back to fresh vectors on breakdown.
        auto admit = [&](Vec w, double scale) -> double {
            for (int tries = 0; tries < 8; ++tries) {
                orthogonalize(w, basis, ws);
                const double nrm = std::sqrt(std::max(0.0, ws.mdot(w, w)));
                if (nrm > 1e-10 * scale) {
                    for (double& x : w) x /= nrm;
                    basis.push_back(std::move(w));
                    return nrm;
                }
                w = randomVector();
                scale = std::sqrt(ws.mdot(w, w));
            }
            throw SolverError("solvePencil: cannot extend the Krylov basis");
        };
        for (int j = 0; j < b; ++j) {
            Vec w = randomVector();
            const double s = std::sqrt(ws.mdot(w, w));
            admit(std::move(w), s);
        }

        const std::size_t maxDim = static_cast<std::size_t>(b) * (opts.maxBlocks + 1);
        std::vector<Vec> H(maxDim, Vec(maxDim, 0.0));  // H[row][col]
        for (int step = 0; step < opts.maxBlocks && basis.size() + b <= std::min(maxDim, n); ++step) {
            const std::size_t kb = static_cast<std::size_t>(step) * b;
            for (int j = 0; j < b; ++j) {
                const std::size_t q = kb + j;
                Vec w = applyOp(basis[q]);
                const double scale = std::sqrt(std::max(0.0, ws.mdot(w, w)));
                const Vec coef = orthogonalize(w, basis, ws);
                for (std::size_t i = 0; i < coef.size(); ++i) H[i][q] += coef[i];
                const std::size_t row = basis.size();
                const bool breakdown = std::sqrt(std::max(0.0, ws.mdot(w, w))) <= 1e-10 * scale;
                const double nrm = admit(std::move(w), scale);
                if (!breakdown) H[row][q] = nrm;
            }
            const std::size_t d = kb + b;
            if (d < static_cast<std::size_t>(count) + b) continue;

            std::vector<double> hs(d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) hs[i * d + j] = 0.5 * (H[i][j] + H[j][i]);
            const SymmetricEigen eig = symmetricEigen(hs, d, true);
            bool converged = true;
            for (int k = 0; k < count && converged; ++k) {
                const std::size_t idx = d - 1 - k;
                const double theta = eig.values[idx];
                const auto y = eig.vector(idx);
                double est = 0.0;
                for (int r = 0; r < b; ++r) {
                    double s = 0.0;
                    for (int c = 0; c < b; ++c) s += H[d + r][kb + c] * y[kb + c];
                    est += s * s;
                }
                if (!(theta > 0.0) || std::sqrt(est) > opts.tolerance * theta) converged = false;
            }
            if (!converged) continue;

            PencilResult res;
            res.restartsUsed = attempt;
            res.basisSize = static_cast<int>(d);
            Vec kx(n), mx(n);
            for (int k = 0; k < count; ++k) {
                const std::size_t idx = d - 1 - k;
                const auto y = eig.vector(idx);
                Vec x(n, 0.0);
                for (std::size_t i = 0; i < d; ++i) simd::axpy(y[i], basis[i], x);
                const double nrm = std::sqrt(ws.mdot(x, x));
                for (double& v : x) v /= nrm;
                const double nu = sigma + 1.0 / eig.values[idx];
                K.multiply(x, kx);
                M.multiply(x, mx);
                double r2 = 0.0, m2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = kx[i] - nu * mx[i];
                    r2 += r * r;
                    m2 += mx[i] * mx[i];
                }
                // Sign: the first entry within 1e-9 of the largest magnitude is positive.
                double big = 0.0;
                for (double v : x) big = std::max(big, std::abs(v));
                for (double v : x)
                    if (std::abs(v) >= (1.0 - 1e-9) * big) {
                        if (v < 0.0)
                            for (double& t : x) t = -t;
                        break;
                    }
                res.values.push_back(nu);
                res.vectors.push_back(std::move(x));
                res.residuals.push_back(std::sqrt(r2 / m2));
            }
            const bool ok = std::all_of(res.residuals.begin(), res.residuals.end(),
                                        [](double r) { return r < 1e-7; });
            if (ok) return res;
        }
    }
    throw SolverError("solvePencil: no convergence after " + std::to_string(opts.restarts) + " restarts");
}

namespace {

std::vector<FemEigenpair> toPairs(PencilResult&& r, BoundaryCondition bc, const std::vector<int>& keep,
                                  std::size_t nv) {
    std::vector<FemEigenpair> out;
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        FemEigenpair p;
        p.index = static_cast<int>(k) + 1;
        p.value = r.values[k];
        p.bc = bc;
        p.residual = r.residuals[k];
        p.normalization = "mass-norm 1, largest entry positive";
        if (keep.empty()) {
            p.values = std::move(r.vectors[k]);
        } else {
            p.values.assign(nv, 0.0);
            for (std::size_t i = 0; i < keep.size(); ++i) p.values[keep[i]] = r.vectors[k][i];
        }
        out.push_back(std::move(p));
    }
    return out;
}

void checkCount(const Mesh2D& mesh, int count) {
    if (count < 1 || static_cast<std::size_t>(count) > mesh.vertexCount() / 10)
        throw std::invalid_argument("solve: count must be in [1, vertices / 10]");
}

}  // namespace

std::vector<FemEigenpair> solveNeumann(const Mesh2D& mesh, int count, const LanczosOptions& opts) {
    checkCount(mesh, count);
    const FemMatrices fm = assembleP1(mesh);
    return toPairs(solvePencil(fm.K, fm.M, count, -1.0, opts), BoundaryCondition::neumann, {},
                   mesh.vertexCount());
}

std::vector<FemEigenpair> solveDirichlet(const Mesh2D& mesh, int count, const LanczosOptions& opts) {
    checkCount(mesh, count);
    const FemMatrices fm = assembleP1(mesh);
    const auto flags = mesh.boundaryFlags();
    std::vector<int> keep;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (!flags[i]) keep.push_back(static_cast<int>(i));
    if (keep.size() < static_cast<std::size_t>(count)) throw std::invalid_argument("solveDirichlet: too few interior vertices");
    return toPairs(solvePencil(restrictMatrix(fm.K, keep), restrictMatrix(fm.M, keep), count, 0.0, opts),
                   BoundaryCondition::dirichlet, keep, mesh.vertexCount());
}

}  // namespace speclab
