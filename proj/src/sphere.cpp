#include "speclab/sphere.hpp"

#include "speclab/error.hpp"
#include "speclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCumCells = 8192;

double powi(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

SphereProfile::SphereProfile(const SphereParams& p) : p_(p), chi_(p.alpha) {
    if (p.m < 1) throw std::invalid_argument("sphere: m must be >= 1");
    if (p.n < 3) throw std::invalid_argument("sphere: n must be >= 3");
    if (!(p.alpha > 0.0 && p.alpha < 1.0 / 24.0)) throw std::invalid_argument("sphere: alpha must be in (0, 1/24)");
    const double mn = static_cast<double>(p.m) * p.n;
    eps_ = 1.0 / (mn * mn);
    delta_ = 1.0 / mn;

    cumT0_ = p.alpha;
    cumDt_ = (1.0 - p.alpha) / kCumCells;
    cumS_.assign(kCumCells + 1, 0.0);
    auto Sfun = [this](double h) { return S(h); };
    for (int k = 0; k < kCumCells; ++k) {
        const double a = (cumT0_ + k * cumDt_) * eps_;
        const double b = (cumT0_ + (k + 1) * cumDt_) * eps_;
        cumS_[k + 1] = cumS_[k] + integrateGL7(Sfun, a, b, 1);
    }
    const double hp = p.alpha * eps_;
    beta_ = -std::expm1(p.m * std::log1p(-2.0 * std::sin(0.5 * hp) * std::sin(0.5 * hp))) + cumS_.back();
    gamma_ = mn * beta_;

    // Amplitude of u: alpha / sup(|v| + |v'| c + |v''| c^2), c = 1/(alpha eps).
    const double c = 1.0 / (p.alpha * eps_);
    double sup = 0.0;
    const int scan = 200000;
    for (int i = 0; i <= scan; ++i) {
        const double t = static_cast<double>(i) / scan;
        const OscillationValue o = oscillation(t);
        sup = std::max(sup, std::abs(o.v) + std::abs(o.dv) * c + std::abs(o.d2v) * c * c);
    }
    // Small margin so a denser scan than this one cannot push the sum past alpha.
    aAmp_ = (1.0 - 1e-6) * p.alpha / sup;
}

double SphereProfile::S(double h) const {
    const double a = std::abs(h);
    if (a >= eps_) return 0.0;
    const double v = p_.m * chi_.value(a / eps_) * std::sin(a) * powi(std::cos(a), p_.m - 1);
    return h < 0.0 ? -v : v;
}

double SphereProfile::dS(double h) const {
    const double a = std::abs(h);
    if (a >= eps_) return 0.0;
    const int m = p_.m;
    const double t = a / eps_;
    const double sn = std::sin(a);
    const double cs = std::cos(a);
    const double body = powi(cs, m) - (m - 1) * sn * sn * (m >= 2 ? powi(cs, m - 2) : 0.0);
    return m * (chi_.derivative(t) / eps_ * sn * powi(cs, m - 1) + chi_.value(t) * body);
}

double SphereProfile::smallS(double h) const {
    const double a = std::abs(h);
    if (a >= delta_) return 0.0;
    const double mn = static_cast<double>(p_.m) * p_.n;
    const double v = -gamma_ * bumpXi(mn * a);
    return h < 0.0 ? -v : v;
}

double SphereProfile::dSmallS(double h) const {
    const double a = std::abs(h);
    if (a >= delta_) return 0.0;
    const double mn = static_cast<double>(p_.m) * p_.n;
    return -gamma_ * mn * bumpXiDerivative(mn * a);
}

double SphereProfile::integralS(double a) const {
    const double hp = p_.alpha * eps_;
    const double plateau = -std::expm1(p_.m * std::log1p(-2.0 * std::sin(0.5 * std::min(a, hp)) *
                                                          std::sin(0.5 * std::min(a, hp))));
    if (a <= hp) return plateau;
    if (a >= eps_) return beta_;
    const double t = a / eps_;
    int k = static_cast<int>(std::floor((t - cumT0_) / cumDt_));
    k = std::clamp(k, 0, kCumCells - 1);
    const double lo = (cumT0_ + k * cumDt_) * eps_;
    return plateau + cumS_[k] + integrateGL7([this](double x) { return S(x); }, lo, a, 1);
}

double SphereProfile::P(double h) const {
    const double a = std::abs(h);
    if (a >= delta_) return 0.0;
    const double mn = static_cast<double>(p_.m) * p_.n;
    return integralS(a) - beta_ * bumpXiCdf(mn * a);
}

double SphereProfile::u(double h) const { return aAmp_ * oscillation(h / (p_.alpha * eps_)).v; }

double SphereProfile::du(double h) const {
    const double s = p_.alpha * eps_;
    return aAmp_ * oscillation(h / s).dv / s;
}

double SphereProfile::d2u(double h) const {
    const double s = p_.alpha * eps_;
    return aAmp_ * oscillation(h / s).d2v / (s * s);
}

double SphereProfile::V(double h) const { return powi(std::cos(h), p_.m) + P(h); }

double SphereProfile::dV(double h) const {
    return -p_.m * powi(std::cos(h), p_.m - 1) * std::sin(h) + R(h);
}

double SphereProfile::T(double h) const { return V(h) + u(h); }

double SphereProfile::Tminus1(double h) const {
    if (std::abs(h) <= p_.alpha * eps_) return u(h);
    return (powi(std::cos(h), p_.m) - 1.0) + P(h) + u(h);
}

double SphereProfile::dT(double h) const { return dV(h) + du(h); }

double SphereProfile::d2T(double h) const {
    const int m = p_.m;
    const double cs = std::cos(h);
    const double sn = std::sin(h);
    const double base = m * (m - 1) * (m >= 2 ? powi(cs, m - 2) : 0.0) * sn * sn - m * powi(cs, m);
    return base + dR(h) + d2u(h);
}

double SphereProfile::KmPerturbation(double h) const {
    const int m = p_.m;
    const double cs = std::cos(h);  // sin(theta)
    const double sn = std::sin(h);  // -cos(theta)
    const double W = P(h) + u(h);
    const double W1 = R(h) + du(h);
    const double W2 = dR(h) + d2u(h);
    return cs * cs * W2 - cs * sn * W1 + (m * (m + 1.0) * cs * cs - static_cast<double>(m) * m) * W;
}

double SphereProfile::denominator(double h) const {
    const double cs = std::cos(h);
    return p_.m * (p_.m + 1.0) * cs * cs * T(h);
}

double SphereProfile::Q(double h) const {
    if (std::abs(h) >= delta_) return 1.0;
    const double D = denominator(h);
    const double floor = 0.9 * p_.m * (p_.m + 1.0) * (1.0 - 2.0 * p_.alpha);
    if (!(std::abs(D) >= floor))
        throw GuardViolation("sphere: denominator " + std::to_string(D) + " below guard " +
                             std::to_string(floor) + " at h = " + std::to_string(h));
    return 1.0 - KmPerturbation(h) / D;
}

const AuditItem* SphereAudit::find(const std::string& name) const {
    for (const AuditItem& it : items)
        if (it.name == name) return &it;
    return nullptr;
}

SphereAudit auditSphereProfile(const SphereProfile& prof, int samples) {
    const SphereParams& p = prof.params();
    const int m = p.m;
    const double alpha = p.alpha;
    const double mn = static_cast<double>(m) * p.n;
    const double eps = prof.eps();
    const double delta = prof.delta();
    SphereAudit audit;
    auto upper = [&](const std::string& name, double value, double bound, bool lemma = true) {
        audit.items.push_back({name, value, bound, value <= bound, lemma});
    };
    auto lower = [&](const std::string& name, double value, double bound, bool lemma = true) {
        audit.items.push_back({name, value, bound, value >= bound, lemma});
    };
    // Scan points on [0, L] for three length scales, plus a tail beyond delta.
    auto grid = [&](double L, const auto& fn) {
        for (int i = 0; i <= samples; ++i) fn(L * i / samples);
    };

    // Cutoff chi at 10^6 points.
    const CutoffChi& chi = prof.chi();
    double chiPlateau = 0.0, chiTail = 0.0, chiMinSlope = 0.0, chiMaxSlope = -1.0;
    const int chiScan = 1000000;
    for (int i = 0; i <= chiScan; ++i) {
        const double t = 1.2 * i / chiScan;
        const double v = chi.value(t);
        const double d = chi.derivative(t);
        if (t <= alpha) chiPlateau = std::max(chiPlateau, std::abs(v - 1.0));
        if (t >= 1.0) chiTail = std::max(chiTail, std::abs(v));
        chiMinSlope = std::min(chiMinSlope, d);
        chiMaxSlope = std::max(chiMaxSlope, d);
    }
    upper("chi.plateau", chiPlateau, 0.0);
    upper("chi.support", chiTail, 0.0);
    lower("chi.slope.min", chiMinSlope, -1.0 / (1.0 - 2.0 * alpha));
    upper("chi.slope.max", chiMaxSlope, 1e-15);

    // S on [0, eps] and its plateau.
    double sMin = 0.0, sMax = 0.0, sdMin = 0.0, sdMax = 0.0, sPlateau = 0.0, sTail = 0.0;
    grid(eps, [&](double h) {
        const double v = prof.S(h);
        const double d = prof.dS(h);
        sMin = std::min(sMin, v);
        sMax = std::max(sMax, v);
        sdMin = std::min(sdMin, d);
        sdMax = std::max(sdMax, d);
    });
    grid(alpha * eps, [&](double h) {
        sPlateau = std::max(sPlateau, std::abs(prof.S(h) - m * std::sin(h) * std::pow(std::cos(h), m - 1)));
    });
    for (int i = 0; i <= 64; ++i) sTail = std::max(sTail, std::abs(prof.S(eps * (1.0 + i / 64.0))));
    upper("S.support", sTail, 0.0);
    upper("S.plateau", sPlateau, 1e-15);
    lower("S.min", sMin, 0.0);
    upper("S.max", sMax, 1.0 / (m * static_cast<double>(p.n) * p.n));
    lower("S.slope.min", sdMin, -m * (1.0 + 4.0 * alpha));
    upper("S.slope.max", sdMax, static_cast<double>(m));

    const double mn4 = mn * mn * mn * mn;
    lower("beta.lower", prof.beta(), alpha * alpha / kPi * m / mn4);
    upper("beta.upper", prof.beta(), 0.5 * m / mn4);

    // R and P on [0, delta] and the fine scale [0, eps].
    double rAbs = 0.0, rdMin = 0.0, rdMax = 0.0, pMin = 0.0, pMax = 0.0, pTail = 0.0, pPlateau = 0.0;
    auto scanR = [&](double h) {
        rAbs = std::max(rAbs, std::abs(prof.R(h)));
        const double d = prof.dR(h);
        rdMin = std::min(rdMin, d);
        rdMax = std::max(rdMax, d);
        const double pv = prof.P(h);
        pMin = std::min(pMin, pv);
        pMax = std::max(pMax, pv);
    };
    grid(delta, scanR);
    grid(eps, scanR);
    grid(alpha * eps, [&](double h) {
        pPlateau = std::max(pPlateau, std::abs(prof.P(h) - (1.0 - std::pow(std::cos(h), m))));
    });
    for (int i = 0; i <= 64; ++i) pTail = std::max(pTail, std::abs(prof.P(delta * (1.0 + i / 64.0))));
    // Mean and L1 norm of R by independent composite quadrature, with
    // panel breaks at the cutoff corners.
    const double t0 = alpha, t1 = alpha + 0.5 * alpha, t2 = 1.0 - 0.5 * alpha;
    auto Rf = [&](double h) { return prof.R(h); };
    auto Raf = [&](double h) { return std::abs(prof.R(h)); };
    const double breaks[] = {0.0, t0 * eps, t1 * eps, t2 * eps, eps, 0.5 * delta, delta};
    double meanR = 0.0, l1R = 0.0;
    for (int k = 0; k + 1 < 7; ++k) {
        meanR += integrateGL7(Rf, breaks[k], breaks[k + 1], 256);
        l1R += integrateGL7(Raf, breaks[k], breaks[k + 1], 256);
    }
    upper("R.max", rAbs, 2.0 / (m * static_cast<double>(p.n) * p.n));
    lower("R.slope.min", rdMin, -m * (1.0 + 5.0 * alpha));
    upper("R.slope.max", rdMax, m * (1.0 + alpha));
    upper("R.mean", std::abs(meanR), 1e-12 * prof.beta());
    upper("R.l1", l1R, 2.0 * m / (mn * mn * mn));
    upper("P.support", pTail, 0.0);
    upper("P.plateau", pPlateau, 1e-10);
    lower("P.min", pMin, 0.0);
    upper("P.max", pMax, 2.0 * m / (mn * mn * mn));
    upper("P.slope", rAbs, 2.0 * m / (mn * mn));
    lower("P.curvature.min", rdMin, -m * (1.0 + 5.0 * alpha));
    upper("P.curvature.max", rdMax, m * (1.0 + alpha));

    // u and its derivatives over its support.
    double uSum = 0.0;
    grid(alpha * eps, [&](double h) {
        uSum = std::max(uSum, std::abs(prof.u(h)) + std::abs(prof.du(h)) + std::abs(prof.d2u(h)));
    });
    upper("u.c2", uSum, alpha);

    // Weight, profile and monotonicity (not part of the n search).
    double qDev = 0.0, qMin = std::numeric_limits<double>::infinity(), dMin = qMin, tDev = 0.0;
    double vdMax = -1.0, vMin = 1.0, vMax = 0.0;
    auto scanQ = [&](double h) {
        const double q = prof.Q(h);
        qDev = std::max(qDev, std::abs(q - 1.0));
        qMin = std::min(qMin, q);
        dMin = std::min(dMin, std::abs(prof.denominator(h)));
        tDev = std::max(tDev, std::abs(prof.T(h) - 1.0));
        vdMax = std::max(vdMax, prof.dV(h));
        vMin = std::min(vMin, prof.V(h));
        vMax = std::max(vMax, prof.V(h));
    };
    grid(delta, scanQ);
    grid(eps, scanQ);
    grid(alpha * eps, scanQ);
    for (int i = 0; i <= samples; ++i) {
        const double h = 0.5 * kPi * i / samples;
        vdMax = std::max(vdMax, prof.dV(h));
        vMin = std::min(vMin, prof.V(h));
        vMax = std::max(vMax, prof.V(h));
    }
    lower("Q.guard", dMin, 0.9 * m * (m + 1.0) * (1.0 - 2.0 * alpha), false);
    upper("Q.bound", qDev, (1.0 + 12.0 * alpha) / (m + 1.0), false);
    lower("Q.positive", qMin, 0.0, false);
    upper("Q.equator", std::abs(prof.Q(0.0) - m / (m + 1.0)), 1e-8, false);
    upper("T.nearOne", tDev, 0.5, false);
    upper("V.monotone", vdMax, 1e-15, false);
    lower("V.min", vMin, 0.0, false);
    upper("V.max", vMax, 1.0 + 1e-15, false);

    audit.lemmasPass = std::all_of(audit.items.begin(), audit.items.end(),
                                   [](const AuditItem& it) { return !it.lemma || it.pass; });
    audit.allPass = std::all_of(audit.items.begin(), audit.items.end(),
                                [](const AuditItem& it) { return it.pass; });
    return audit;
}

SphereBuild buildSphereProfile(int m, double alpha, int nMax) {
    SphereBuild b;
    for (int n = 3; n <= nMax; n *= 2) {
        b.triedN.push_back(n);
        const SphereProfile prof({m, n, alpha});
        b.audit = auditSphereProfile(prof, 1 << 13);
        // The coarse scan only screens; the dense audit decides.
        if (!b.audit.lemmasPass) continue;
        b.audit = auditSphereProfile(prof);
        if (b.audit.lemmasPass) {
            b.params = {m, n, alpha};
            return b;
        }
    }
    throw ConstructionError("sphere: no n <= " + std::to_string(nMax) + " satisfies the lemma bounds for m = " +
                            std::to_string(m));
}

}  // namespace speclab
