#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace speclab {

enum class Parity { none, even, odd };
std::string parityName(Parity p);

// One eigenpair of -u'' + k^2 u = sigma Q u on the 2 pi periodic grid.
// The vector is normalised so that sum Q u^2 = sum Q, and its first
// component above 1e-8 |u|_inf is positive.
struct SpectralPair {
    double value = 0.0;
    std::vector<double> vector;
    int k = 0;
    Parity parity = Parity::none;
    int index = 1;       // 1-based position within its (k, parity) class
    int ySector = 0;     // 0: cos(k y), 1: sin(k y) on the torus
    double residual = 0.0;  // |r|_inf / (|u|_inf max(sigma, 1))
};

// Spectral second-derivative matrix (row-major) on n equispaced nodes of
// [0, 2 pi); n must be even.
std::vector<double> spectralSecondDerivativeMatrix(std::size_t n);

// Lowest `count` pairs (count <= n/4). Q is sampled on the grid nodes and
// must be positive; parity restriction requires Q even about 0 on the grid.
std::vector<SpectralPair> solveSturm(std::span<const double> Q, int k, std::size_t count,
                                     Parity parity = Parity::none);

// Runs of consecutive values whose gaps are below tol.
std::vector<std::vector<std::size_t>> multiplicityBlocks(std::span<const double> values,
                                                         double tol = 1e-9);

// Merged spectrum of -Laplacian Phi = lambda Q(x) Phi on the flat torus from
// the k = 0..kmax one-dimensional problems; k >= 1 entries appear twice.
// Throws GuardViolation if the (count+1)-th value is not below (kmax+1)^2 / max Q.
std::vector<SpectralPair> torusSpectrum(std::span<const double> Q, int kmax, std::size_t count);

// Second-order perturbation data of Q_a = 1 + a n^2 cos(nx)/(1 + a cos(nx)).
struct PerturbationCoefficients {
    int n = 0;
    double sigma1 = 0.0, tau1 = 0.0;
    double sigma2 = 0.0, tau2 = 0.0;  // closed form -2 n^2 / (n^2 - 4)
    double An = 0.0;                  // closed form (pi/2)(-4/(n^2 - 4))
    double AnQuadrature = 0.0;        // same integral by quadrature
    double BnQuadrature = 0.0;        // odd-sector analogue
    std::vector<std::string> trace;
    double p(double x) const;  // even first-order corrector
    double q(double x) const;  // odd first-order corrector
};
PerturbationCoefficients perturbationCoefficients(int n);

// Q_a sampled on N nodes.
std::vector<double> weightQa(int n, double a, std::size_t N);

struct PerturbationCheck {
    int n = 0;
    std::vector<double> aList;
    std::vector<double> sigma, tau;   // second even / first odd k = 0 values
    double sigma2Fit = 0.0, tau2Fit = 0.0;
    double expected = 0.0;
    double sigmaRelErr = 0.0, tauRelErr = 0.0;
    double splitAtSmallest = 0.0;  // |tau - sigma| at the smallest a
    bool pass = false;
};
// Fits (sigma - 1)/a^2 by quadratic extrapolation to a = 0 (three or more a).
PerturbationCheck verifyPerturbation(int n, std::span<const double> aList, std::size_t grid = 512);

}  // namespace speclab
