#pragma once

#include <vector>

namespace speclab {

// Standard bump exp(-1/(1-y^2)) on (-1, 1) normalised to unit integral,
// with its cumulative integral C and second integral G tabulated for
// cubic Hermite evaluation.
class UnitMollifier {
public:
    static const UnitMollifier& instance();
    double density(double y) const;   // rho(y)
    double cdf(double y) const;       // C(y) = int_{-1}^{y} rho
    double cdfIntegral(double y) const;  // G(y) = int_{-1}^{y} C; G(y) = y for y >= 1
    double rawIntegral() const { return raw_; }  // int exp(-1/(1-y^2)) dy

private:
    UnitMollifier();
    double hermite(const std::vector<double>& f, const std::vector<double>& df, double y) const;
    double raw_ = 0.0;
    int cells_ = 0;
    std::vector<double> c_, m1_, rhoTab_, yrhoTab_;
};

// Smooth even cutoff: 1 on [-alpha, alpha], 0 outside (-1, 1), obtained by
// mollifying the linear ramp from (alpha + w, 1) to (1 - w, 0) with a bump
// of half-width w = alpha/4. Its slope is bounded by 1/(1 - 1.5 alpha).
class CutoffChi {
public:
    explicit CutoffChi(double alpha);
    double value(double t) const;
    double derivative(double t) const;
    double alpha() const { return alpha_; }
    double width() const { return w_; }
    double slopeBound() const { return 1.0 / len_; }
    // Corner zones [alpha, alpha + 2w] and [1 - 2w, 1] in t >= 0.
    double corner0() const { return alpha_; }
    double corner1() const { return 1.0 - 2.0 * w_; }

private:
    double alpha_, w_, t0_, t1_, len_;
};

// Bump supported in (1/2, 1) with unit integral: the standard bump mapped by
// y = 4t - 3 and rescaled.
double bumpXi(double t);
double bumpXiDerivative(double t);
double bumpXiCdf(double t);  // int_{1/2}^{t} xi

// v(t) = exp(g) cos(g) with g = 1/(t^2 - 1) on (-1, 1), 0 elsewhere.
struct OscillationValue {
    double v, dv, d2v;
};
OscillationValue oscillation(double t);

}  // namespace speclab
