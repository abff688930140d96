#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace speclab {

// Physicists' Hermite polynomial by H_{k+1} = 2x H_k - 2k H_{k-1}, k <= 60.
double hermiteEval(int k, double x);
// Power-basis coefficients of H_k, lowest degree first.
std::vector<double> hermiteCoefficients(int k);

// Nodes and weights for int f(x) exp(-x^2) dx (Golub-Welsch).
struct GaussHermite {
    std::vector<double> nodes, weights;
};
GaussHermite gaussHermite(int n);

// Dense polynomial in two variables: coefficient of x^i y^j at index(i, j),
// ordered by total degree then by j.
struct Poly2 {
    int degree = 0;
    std::vector<double> c;
    explicit Poly2(int d = 0);
    static std::size_t index(int i, int j);
    double& at(int i, int j) { return c[index(i, j)]; }
    double at(int i, int j) const { return c[index(i, j)]; }
    double operator()(double x, double y) const;
    Poly2 operator*(const Poly2& o) const;
    // Lowers degree to the highest nonzero total degree.
    void trim();
};

// Same for three variables.
struct Poly3 {
    int degree = 0;
    std::vector<double> c;
    explicit Poly3(int d = 0);
    static std::size_t index(int i, int j, int k);
    double& at(int i, int j, int k) { return c[index(i, j, k)]; }
    double operator()(double x, double y, double z) const;
};

// Oscillator basis e^{-(x^2+y^2)/2} H_a(x) H_b(y) with eigenvalue
// 2(a+b+1), enumerated by a+b and then by a ascending.
struct HermiteBasisIndex {
    int a = 0, b = 0;
    int eigenvalue() const { return 2 * (a + b + 1); }
    std::size_t flat = 0;
};
std::vector<HermiteBasisIndex> hermiteBasis(std::size_t count);

// The polynomial factor of sum_i coeffs[i] * basis_i and a window radius
// 1 + (largest Cauchy root bound of P on the two axes).
struct QhoCombination {
    Poly2 poly;
    int levelDegree = 0;  // minimal k with n <= (k+1)(k+2)/2
    double windowRadius = 1.0;
};
QhoCombination qhoCombination(const std::vector<double>& coeffs);
// Inverse: coefficients of P in the basis (length (d+1)(d+2)/2).
std::vector<double> hermiteBasisCoefficients(const Poly2& p);

// Product of k lines tangent to the unit circle with normals at angles
// pi (i + 1/2) / k; k(k+1)/2 + 1 nodal domains.
Poly2 tangentLinesPolynomial(int k);

// Real part of (v . x)^l for v = a + i b with a, b orthonormal: a
// homogeneous harmonic polynomial of degree l.
Poly3 isotropicPower(const std::array<double, 3>& a, const std::array<double, 3>& b, int l);
// Seeded sum of `terms` isotropic powers of degree l with random directions.
Poly3 randomHarmonic(int l, int terms, std::uint64_t seed);

}  // namespace speclab
