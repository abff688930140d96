#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace speclab {

// Eigenpairs in ascending order. vectors is row-major with one unit
// eigenvector per row: vectors[k * n + i] is component i of pair k.
struct SymmetricEigen {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
    std::span<const double> vector(std::size_t k) const {
        return {vectors.data() + k * n, n};
    }
};

// Householder tridiagonalisation followed by implicit-shift QL.
// a is the row-major n x n symmetric matrix (only read, full storage).
SymmetricEigen symmetricEigen(std::span<const double> a, std::size_t n, bool wantVectors = true);

// Implicit-shift QL on a symmetric tridiagonal matrix; off[i] couples i, i+1.
SymmetricEigen tridiagonalEigen(std::vector<double> diag, std::vector<double> off,
                                bool wantVectors = true);

}  // namespace speclab
