#include "speclab/cutoffs.hpp"

#include "speclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclab {
namespace {

double rawBump(double y) {
    const double q = 1.0 - y * y;
    return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

}  // namespace

UnitMollifier::UnitMollifier() : cells_(4096) {
    const int K = cells_;
    const double h = 2.0 / K;
    std::vector<double> c(K + 1, 0.0), m1(K + 1, 0.0);
    for (int k = 0; k < K; ++k) {
        const double a = -1.0 + k * h;
        c[k + 1] = c[k] + integrateGL7(rawBump, a, a + h, 2);
        m1[k + 1] = m1[k] + integrateGL7([](double y) { return y * rawBump(y); }, a, a + h, 2);
    }
    raw_ = c[K];
    c_.resize(K + 1);
    m1_.resize(K + 1);
    rhoTab_.resize(K + 1);
    yrhoTab_.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        const double y = -1.0 + k * h;
        c_[k] = c[k] / raw_;
        m1_[k] = m1[k] / raw_;
        rhoTab_[k] = rawBump(y) / raw_;
        yrhoTab_[k] = y * rhoTab_[k];
    }
    c_[K] = 1.0;
    m1_[K] = 0.0;  // the bump is even
}

const UnitMollifier& UnitMollifier::instance() {
    static const UnitMollifier m;
    return m;
}

double UnitMollifier::density(double y) const { return rawBump(y) / raw_; }

double UnitMollifier::hermite(const std::vector<double>& f, const std::vector<double>& df, double y) const {
    const double h = 2.0 / cells_;
    const double pos = (y + 1.0) / h;
    int k = static_cast<int>(std::floor(pos));
    k = std::clamp(k, 0, cells_ - 1);
    const double s = pos - k;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * f[k] + h10 * h * df[k] + h01 * f[k + 1] + h11 * h * df[k + 1];
}

double UnitMollifier::cdf(double y) const {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return hermite(c_, rhoTab_, y);
}

double UnitMollifier::cdfIntegral(double y) const {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return y;
    return y * cdf(y) - hermite(m1_, yrhoTab_, y);
}

CutoffChi::CutoffChi(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 0.25)) throw std::invalid_argument("cutoff: alpha must be in (0, 1/4]");
    w_ = alpha / 4.0;
    t0_ = alpha + w_;
    t1_ = 1.0 - w_;
    len_ = t1_ - t0_;
}

double CutoffChi::value(double t) const {
    t = std::abs(t);
    if (t <= alpha_) return 1.0;
    if (t >= 1.0) return 0.0;
    const UnitMollifier& m = UnitMollifier::instance();
    const double g = m.cdfIntegral((t - t0_) / w_) - m.cdfIntegral((t - t1_) / w_);
    return 1.0 - (w_ / len_) * g;
}

double CutoffChi::derivative(double t) const {
    const double sign = t < 0.0 ? -1.0 : 1.0;
    t = std::abs(t);
    if (t <= alpha_ || t >= 1.0) return 0.0;
    const UnitMollifier& m = UnitMollifier::instance();
    return -sign * (m.cdf((t - t0_) / w_) - m.cdf((t - t1_) / w_)) / len_;
}

double bumpXi(double t) {
    const double y = 4.0 * t - 3.0;
    return 4.0 * UnitMollifier::instance().density(y);
}

double bumpXiDerivative(double t) {
    const double y = 4.0 * t - 3.0;
    const double q = 1.0 - y * y;
    if (q <= 0.0) return 0.0;
    return bumpXi(t) * (-2.0 * y / (q * q)) * 4.0;
}

double bumpXiCdf(double t) { return UnitMollifier::instance().cdf(4.0 * t - 3.0); }

OscillationValue oscillation(double t) {
    const double q = t * t - 1.0;
    if (!(q < 0.0)) return {0.0, 0.0, 0.0};
    const double g = 1.0 / q;
    const double e = std::exp(g);
    if (e == 0.0) return {0.0, 0.0, 0.0};
    const double cg = std::cos(g);
    const double sg = std::sin(g);
    const double g1 = -2.0 * t * g * g;
    const double g2 = -2.0 * g * g + 8.0 * t * t * g * g * g;
    return {e * cg, g1 * e * (cg - sg), g2 * e * (cg - sg) - 2.0 * g1 * g1 * e * sg};
}

}  // namespace speclab
