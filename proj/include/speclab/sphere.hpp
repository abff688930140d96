#pragma once

#include "speclab/cutoffs.hpp"
#include "speclab/fields.hpp"
#include "speclab/nodal.hpp"

#include <span>
#include <string>
#include <vector>

namespace speclab {

struct SphereParams {
    int m = 1;
    int n = 3;
    double alpha = 1.0 / 32.0;
};

// Zonal profile T(theta) and weight Q(theta) with
// -Laplacian(T cos(m phi)) = m(m+1) Q T cos(m phi) on the round sphere.
// All members are functions of h = theta - pi/2; S, s, R are odd in h and
// P, u, T, Q even, so the profile is exactly symmetric about the equator.
class SphereProfile {
public:
    explicit SphereProfile(const SphereParams& p);

    const SphereParams& params() const { return p_; }
    double eps() const { return eps_; }      // 1/(mn)^2, support of S
    double delta() const { return delta_; }  // 1/(mn), support of P
    double beta() const { return beta_; }    // int_0^eps S
    double gamma() const { return gamma_; }  // mn beta
    double amplitude() const { return aAmp_; }
    const CutoffChi& chi() const { return chi_; }

    double S(double h) const;
    double dS(double h) const;
    double smallS(double h) const;
    double dSmallS(double h) const;
    double R(double h) const { return S(h) + smallS(h); }
    double dR(double h) const { return dS(h) + dSmallS(h); }
    double P(double h) const;
    double u(double h) const;
    double du(double h) const;
    double d2u(double h) const;
    double T(double h) const;
    double dT(double h) const;
    double d2T(double h) const;
    // T - 1 without cancellation on the plateau |h| <= alpha eps, where
    // sin^m + P == 1 by construction.
    double Tminus1(double h) const;
    double V(double h) const;   // sin^m + P
    double dV(double h) const;
    // K_m applied to P + u with analytic derivatives.
    double KmPerturbation(double h) const;
    double denominator(double h) const;  // m(m+1) sin^2 T
    double Q(double h) const;

private:
    double integralS(double h) const;  // int_0^h S for 0 <= h

    SphereParams p_;
    CutoffChi chi_;
    double eps_ = 0.0, delta_ = 0.0, beta_ = 0.0, gamma_ = 0.0, aAmp_ = 0.0;
    // Cumulative int S on a uniform grid in t = h/eps over [alpha, 1].
    std::vector<double> cumS_;
    double cumT0_ = 0.0, cumDt_ = 0.0;
};

struct AuditItem {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool lemma = true;  // part of the construction lemmas (drives the n search)
};

struct SphereAudit {
    std::vector<AuditItem> items;
    bool lemmasPass = false;
    bool allPass = false;
    const AuditItem* find(const std::string& name) const;
};

SphereAudit auditSphereProfile(const SphereProfile& prof, int samples = 1 << 15);

// Smallest n = 3 * 2^k for which every lemma item passes.
struct SphereBuild {
    SphereParams params;
    std::vector<int> triedN;
    SphereAudit audit;
};
SphereBuild buildSphereProfile(int m, double alpha, int nMax = 3 << 12);

// Sixth-order (or `order`) finite-difference K_m on samples f_i at
// theta_i = theta0 + i h, with one-sided stencils near the ends.
std::vector<double> applyKm(std::span<const double> f, double theta0, double h, int m, int order = 6);

// Finite-difference weights for derivatives 0..maxDeriv at x0 (Fornberg).
std::vector<std::vector<double>> fornbergWeights(double x0, std::span<const double> xs, int maxDeriv);

struct SphereResidual {
    std::size_t ntheta = 0, nphi = 0;
    double theta0 = 0.0, theta1 = 0.0;
    double residual = 0.0;        // max |res| / max |Phi| on unmasked cells
    std::size_t maskedRows = 0;
    double maskedFraction = 0.0;
};

// Residual of -Laplacian Phi - m(m+1) Q Phi for Phi = T cos(m phi) on a
// window grid over J = [pi/2 - 1.25 delta, pi/2 + 1.25 delta] with ntheta
// cell-centred rows. The exact harmonic sin^m cos(m phi) is applied
// analytically, the deviation (P + u) cos(m phi) with centred differences
// of the given order in theta and spectrally in phi. Rows
// whose features have fewer than 32 cells (oscillation half-periods of v,
// cutoff corners) are masked, using the mask of the coarsest resolution
// `maskNtheta`.
SphereResidual sphereResidual(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi,
                              std::size_t maskNtheta = 0, int order = 2);

// Residual at ntheta/2 and ntheta with the fourth-order scheme, both masked
// as at ntheta/4 so the pair sits in the asymptotic regime; the observed
// order must be at least 3.5.
struct SphereVerification {
    SphereResidual coarse, fine;
    double observedOrder = 0.0;
    double labellingValue = 0.0;  // (2/3)(1+4 alpha)^-1 lambda_5(round) = 4/(1+4 alpha)
    bool residualPass = false, orderPass = false, labellingPass = false;
    bool pass = false;
};
SphereVerification verifySphereEigen(const SphereProfile& prof, std::size_t ntheta = 4096,
                                     std::size_t nphi = 32, double tolerance = 1e-5);

// Residual of the full numeric Laplacian (sixth order in theta) for the
// round harmonic sin^m cos(m phi) with Q = 1, away from the poles.
double roundHarmonicResidual(int m, std::size_t ntheta, std::size_t nphi);

// {Phi > 1} inside the plateau band |h| <= alpha eps, sampled as Phi - 1
// with exact sign classification. Only the part of the band where each
// oscillation half-period of v spans at least `cellsPerHalfPeriod` rows is
// counted.
struct SphereComponentCount {
    std::size_t ntheta = 0;
    double resolvedT = 0.0;   // counted for |t| <= resolvedT, t = h/(alpha eps)
    std::size_t count = 0;
    std::size_t oracleCount = 0;  // positive runs of v on the same rows
};
ScalarField2D sphereExcessBand(const SphereProfile& prof, std::size_t ntheta, std::size_t nphi);
SphereComponentCount sphereComponentCount(const SphereProfile& prof, std::size_t ntheta,
                                          std::size_t nphi = 64, double cellsPerHalfPeriod = 8.0);

}  // namespace speclab
