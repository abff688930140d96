#include "experiments.hpp"

#include "speclab/bessel.hpp"
#include "speclab/contour.hpp"
#include "speclab/error.hpp"
#include "speclab/fem.hpp"
#include "speclab/fem_scans.hpp"
#include "speclab/field_io.hpp"
#include "speclab/hermite.hpp"
#include "speclab/mesh.hpp"
#include "speclab/nodal.hpp"
#include "speclab/poly_nodal.hpp"
#include "speclab/spectrum1d.hpp"
#include "speclab/sphere.hpp"
#include "speclab/torus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace speclab::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string csvRow(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + formatDouble(v[i]);
    return s + "\n";
}

Json sizesJson(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (std::size_t x : v) a.push_back(x);
    return a;
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parseReal(const std::string& key, const std::string& s) {
    // Plain fractions such as 1/32 are accepted.
    if (const auto slash = s.find('/'); slash != std::string::npos)
        return parseReal(key, s.substr(0, slash)) / parseReal(key, s.substr(slash + 1));
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw UsageError("parameter '" + key + "': expected a number, got '" + s + "'");
    return v;
}

long long parseInteger(const std::string& key, const std::string& s) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError("parameter '" + key + "': expected an integer, got '" + s + "'");
    return v;
}

// ---------------------------------------------------------------- torus

void torusExample1(Context& ctx) {
    Report& r = ctx.report();
    const std::size_t nx = ctx.size("resolution");
    const std::size_t ny = ctx.size("ny");
    if (nx < 64 || nx % 4 != 0) throw UsageError("resolution must be a multiple of 4 and at least 64");
    const auto c = ctx.isAuto("m") ? buildExample1(nx) : buildExample1(nx, ctx.integer("m"));
    r.results()["m"] = c.m;
    r.results()["minQ"] = c.minQ;
    r.results()["argminQ"] = c.argminQ;
    r.results()["scanResolution"] = c.scanResolution;
    r.checkAtLeast("minQ.positive", c.minQ, 0.0);
    const double res = torusEigenResidual(c, nx, ny);
    r.results()["residual"] = number(res);
    r.checkAtMost("eigen.residual", res, 1e-6);

    NodalOptions exact;
    exact.relTolerance = 0.0;
    std::vector<std::size_t> counts;
    Json table = Json::array();
    for (std::size_t k : {nx / 4, nx / 2, nx}) {
        const LevelSetReport rep = countLevelComponents(phiExcessField(c, k, ny), 0.0, Side::above, exact);
        counts.push_back(rep.componentCount);
        table.push_back({{"nx", k}, {"ny", ny}, {"components", rep.componentCount}});
    }
    r.results()["componentsAboveOne"] = table;
    r.checkTrue("components.nondecreasing", std::is_sorted(counts.begin(), counts.end()));
    r.checkAtLeast("components.growth", static_cast<double>(counts.back()), static_cast<double>(counts.front() + 1));

    const ScalarField2D phi = phiField(c, nx, ny);
    writeField(phi, ctx.path("phi.json"));
    r.artifact("phi.json");
    r.artifact("phi.csv");
    ctx.write("phi_level1.svg", renderContourSVG(phi, 1.0, "Example 1, {Phi = 1}"));
}

void torusExample2(Context& ctx) {
    Report& r = ctx.report();
    const int n = ctx.integer("n");
    const double a = ctx.isAuto("a") ? defaultAmplitude(n) : ctx.real("a");
    const std::size_t nx = ctx.size("nx"), ny = ctx.size("ny");
    const auto c = buildExample2(n, a, nx);
    r.results()["a"] = a;
    r.results()["minQ"] = c.minQ;
    r.checkAtLeast("minQ.positive", c.minQ, 0.0);
    const double res = torusEigenResidual(c, nx, ny);
    r.results()["residual"] = number(res);
    r.checkAtMost("eigen.residual", res, 1e-8);

    NodalOptions exact;
    exact.relTolerance = 0.0;
    const LevelSetReport rep = countLevelComponents(phiExcessField(c, nx, ny), 0.0, Side::above, exact);
    r.results()["componentsAboveOne"] = rep.componentCount;
    r.results()["componentCells"] = sizesJson(rep.componentCells);
    r.checkEqual("components.aboveOne", static_cast<double>(rep.componentCount), n);

    const ScalarField2D phi = phiField(c, nx, ny);
    const ContourSet cs = extractContours(phi, 1.0);
    r.results()["contourClosedLoops"] = cs.closedCount();
    r.checkEqual("contour.closedLoops", static_cast<double>(cs.closedCount()), n);
    writeField(phi, ctx.path("phi.json"));
    r.artifact("phi.json");
    r.artifact("phi.csv");
    ctx.write("phi_level1.svg", renderContourSVG(cs, phi, "Example 2, n = " + std::to_string(n) + ", {Phi = 1}"));
}

// ---------------------------------------------------------------- spectrum

void labellingCheck(Report& r, int n, double a, std::size_t grid, const std::string& prefix) {
    const std::vector<double> Q = weightQa(n, a, grid);
    const auto spec = torusSpectrum(Q, 3, 8);
    std::vector<double> vals;
    for (const auto& p : spec) vals.push_back(p.value);
    r.results()[prefix + "Spectrum"] = numbers(vals);
    r.checkAtMost(prefix + ".lambda2", vals[1], 1.0 - 1e-6);
    r.checkAtMost(prefix + ".lambda3", vals[2], 1.0 - 1e-6);
    r.checkAtMost(prefix + ".lambda4.minusOne", std::abs(vals[3] - 1.0), 1e-8);
    r.checkAtMost(prefix + ".lambda5.minusOne", std::abs(vals[4] - 1.0), 1e-8);
}

void spectrumTorus(Context& ctx) {
    Report& r = ctx.report();
    const int n = ctx.integer("n");
    const double a = ctx.real("a");
    const std::size_t count = ctx.size("count"), grid = ctx.size("grid");
    const int kmax = ctx.integer("kmax");
    const auto spec = torusSpectrum(weightQa(n, a, grid), kmax, count);
    std::string csv = "index,value,k,parity,sector,class_index,residual\n";
    double maxRes = 0.0, closest = 1e300;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& p = spec[i];
        csv += std::to_string(i + 1) + "," + formatDouble(p.value) + "," + std::to_string(p.k) + "," +
               parityName(p.parity) + "," + std::to_string(p.ySector) + "," + std::to_string(p.index) + "," +
               formatDouble(p.residual) + "\n";
        maxRes = std::max(maxRes, p.residual);
        if (p.k == 1) closest = std::min(closest, std::abs(p.value - 1.0));
    }
    ctx.write("spectrum.csv", csv);
    r.results()["count"] = spec.size();
    r.results()["maxResidual"] = number(maxRes);
    r.checkAtMost("residual.max", maxRes, 1e-8);
    // F_a(x) cos y is an exact eigenfunction with eigenvalue 1.
    r.checkAtMost("eigenvalue.one", closest, 1e-8);
}

void perturb(Context& ctx) {
    Report& r = ctx.report();
    const int n = ctx.integer("n");
    const std::vector<double> aList = ctx.reals("a-list");
    const std::size_t grid = ctx.size("grid");
    if (n < 3) throw UsageError("perturb needs n >= 3");
    if (aList.size() < 3) throw UsageError("a-list needs at least three amplitudes");
    const PerturbationCoefficients pc = perturbationCoefficients(n);
    r.results()["sigma2"] = pc.sigma2;
    r.results()["tau2"] = pc.tau2;
    r.results()["An"] = pc.An;
    r.results()["AnQuadrature"] = pc.AnQuadrature;
    r.checkAtMost("An.quadrature", std::abs(pc.An - pc.AnQuadrature), 1e-10 * std::max(1.0, std::abs(pc.An)));

    const PerturbationCheck chk = verifyPerturbation(n, aList, grid);
    std::string csv = "a,sigma,tau\n";
    for (std::size_t i = 0; i < chk.aList.size(); ++i)
        csv += csvRow({chk.aList[i], chk.sigma[i], chk.tau[i]});
    ctx.write("perturbation.csv", csv);
    r.results()["expected"] = chk.expected;
    r.results()["sigma2Fit"] = chk.sigma2Fit;
    r.results()["tau2Fit"] = chk.tau2Fit;
    r.results()["splitAtSmallest"] = chk.splitAtSmallest;
    r.checkAtMost("sigma2.relativeError", chk.sigmaRelErr, 0.02);
    r.checkAtMost("tau2.relativeError", chk.tauRelErr, 0.02);
    // The labelling statement concerns n = 3.
    if (n == 3) labellingCheck(r, n, ctx.real("labelling-a"), grid, "labelling");
}

// ---------------------------------------------------------------- sphere

Json profileJson(const SphereProfile& p) {
    return {{"m", p.params().m},
            {"n", p.params().n},
            {"alpha", p.params().alpha},
            {"eps", p.eps()},
            {"delta", p.delta()},
            {"beta", p.beta()},
            {"gamma", p.gamma()},
            {"aAmp", p.amplitude()}};
}

void writeProfile(Context& ctx, const SphereProfile& p) {
    Json j = profileJson(p);
    j["data"] = "profile.csv";
    ctx.write("profile.json", j.dump(2) + "\n");
    const int samples = 4096;
    const double H = 1.25 * p.delta();
    std::string csv = "h,theta,T,Q,P,u\n";
    std::vector<double> th, T;
    for (int i = 0; i <= samples; ++i) {
        const double h = -H + 2.0 * H * i / samples;
        csv += csvRow({h, kPi / 2 + h, p.T(h), p.Q(h), p.P(h), p.u(h)});
        th.push_back(kPi / 2 + h);
        T.push_back(p.T(h));
    }
    ctx.write("profile.csv", csv);
    ctx.write("profile_T.svg", renderLinePlot(th, T, "T(theta) near the equator", "theta", "T"));
}

SphereProfile readProfile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read profile '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
        SphereProfile p({j.at("m").get<int>(), j.at("n").get<int>(), j.at("alpha").get<double>()});
        // The profile is rebuilt from its parameters; the stored scalars must agree.
        for (const char* key : {"beta", "gamma", "aAmp"}) {
            const double stored = j.at(key).get<double>();
            const double now = profileJson(p)[key].get<double>();
            if (stored != now)
                throw UsageError(std::string("profile scalar '") + key + "' does not match its parameters");
        }
        return p;
    } catch (const Json::exception& e) {
        throw UsageError("malformed profile '" + path.string() + "': " + e.what());
    }
}

void auditChecks(Report& r, const SphereAudit& a) {
    for (const auto& it : a.items) r.check("audit." + it.name, it.value, "<=", it.bound, it.pass);
}

SphereProfile profileFromParams(Context& ctx, bool record) {
    Report& r = ctx.report();
    const int m = ctx.integer("m");
    const double alpha = ctx.real("alpha");
    if (ctx.isAuto("n")) {
        const SphereBuild b = buildSphereProfile(m, alpha);
        if (record) {
            Json tried = Json::array();
            for (int n : b.triedN) tried.push_back(n);
            r.results()["triedN"] = tried;
            r.results()["n"] = b.params.n;
            auditChecks(r, b.audit);
        }
        return SphereProfile(b.params);
    }
    SphereProfile p({m, ctx.integer("n"), alpha});
    if (record) {
        r.results()["n"] = p.params().n;
        auditChecks(r, auditSphereProfile(p));
    }
    return p;
}

void verifyChecks(Context& ctx, const SphereProfile& p, std::size_t ntheta, std::size_t nphi) {
    Report& r = ctx.report();
    const SphereVerification v = verifySphereEigen(p, ntheta, nphi);
    r.results()["residual"] = {{"coarse", number(v.coarse.residual)},
                               {"fine", number(v.fine.residual)},
                               {"ntheta", v.fine.ntheta},
                               {"maskedFraction", number(v.fine.maskedFraction)},
                               {"observedOrder", number(v.observedOrder)},
                               {"labellingValue", number(v.labellingValue)}};
    const double mm = p.params().m * (p.params().m + 1.0);
    r.check("residual.fine", v.fine.residual, "<=", 1e-5 * mm, v.residualPass);
    r.check("residual.order", v.observedOrder, ">=", 3.5, v.orderPass);
    r.check("labelling", v.labellingValue, ">", 2.0, v.labellingPass);
}

void countChecks(Context& ctx, const SphereProfile& p, const std::vector<std::size_t>& res) {
    Report& r = ctx.report();
    Json table = Json::array();
    std::vector<std::size_t> counts;
    for (std::size_t nt : res) {
        const SphereComponentCount c = sphereComponentCount(p, nt);
        counts.push_back(c.count);
        table.push_back({{"ntheta", nt}, {"resolvedT", number(c.resolvedT)}, {"components", c.count},
                         {"oracle", c.oracleCount}});
        r.checkEqual("components.oracle." + std::to_string(nt), static_cast<double>(c.count),
                     static_cast<double>(c.oracleCount));
    }
    r.results()["componentsAboveOne"] = table;
    r.checkTrue("components.nondecreasing", std::is_sorted(counts.begin(), counts.end()));
    r.checkAtLeast("components.finest", static_cast<double>(counts.back()), 5.0);
    const ScalarField2D band = sphereExcessBand(p, res.front(), 256);
    ctx.write("phi_level1.svg", renderContourSVG(band, 0.0, "{Phi = 1} near the equator (theta, phi)"));
}

void requireUnitThreshold(Context& ctx) {
    if (ctx.real("threshold") != 1.0) throw UsageError("sphere count supports only --threshold 1");
}

void sphereAll(Context& ctx) {
    const SphereProfile p = profileFromParams(ctx, true);
    writeProfile(ctx, p);
    verifyChecks(ctx, p, ctx.size("ntheta"), ctx.size("nphi"));
    countChecks(ctx, p, ctx.sizes("count-resolutions"));
}

void sphereBuild(Context& ctx) {
    const SphereProfile p = profileFromParams(ctx, true);
    ctx.report().results()["profile"] = profileJson(p);
    writeProfile(ctx, p);
}

SphereProfile profileFromFileOrParams(Context& ctx) {
    if (ctx.has("profile")) return readProfile(ctx.str("profile"));
    return profileFromParams(ctx, false);
}

void sphereVerify(Context& ctx) {
    const SphereProfile p = profileFromFileOrParams(ctx);
    ctx.report().results()["profile"] = profileJson(p);
    verifyChecks(ctx, p, ctx.size("ntheta"), ctx.size("nphi"));
}

void sphereCount(Context& ctx) {
    requireUnitThreshold(ctx);
    const SphereProfile p = profileFromFileOrParams(ctx);
    ctx.report().results()["profile"] = profileJson(p);
    countChecks(ctx, p, ctx.sizes("count-resolutions"));
}

// ---------------------------------------------------------------- fem

std::string eigenTable(const std::vector<FemEigenpair>& pairs) {
    std::string csv = "index,value,residual\n";
    for (const auto& p : pairs)
        csv += std::to_string(p.index) + "," + formatDouble(p.value) + "," + formatDouble(p.residual) + "\n";
    return csv;
}

void checkResiduals(Report& r, const std::vector<FemEigenpair>& pairs) {
    double worst = 0.0;
    for (const auto& p : pairs) worst = std::max(worst, p.residual);
    r.results()["maxResidual"] = number(worst);
    r.checkAtMost("eigen.residual", worst, 1e-7);
}

void writeLevelPlot(Context& ctx, const std::string& name, const ScalarField2D& f, double a,
                    const std::string& title) {
    ctx.write(name, renderContourSVG(f, a, title));
}

void femTriangle(Context& ctx) {
    Report& r = ctx.report();
    const double b = ctx.real("b");
    const int level = ctx.integer("levels");
    const int count = ctx.integer("count");
    const std::size_t raster = ctx.size("raster");
    if (count < 3) throw UsageError("count must be at least 3");
    const Mesh2D mesh = meshTriangle(b, level);
    r.results()["vertices"] = mesh.vertexCount();
    r.results()["minAngle"] = minAngleDegrees(mesh);
    const auto pairs = solveNeumann(mesh, count);
    checkResiduals(r, pairs);
    ctx.write("eigenvalues.csv", eigenTable(pairs));
    const RasterMap map = buildRasterMap(mesh, raster, raster);

    const LevelDomainScan base = levelDomainScan(mesh, map, pairs[1], {0.0, 0.0}, {});
    const double a1 = std::clamp(0.5 * (1.0 + base.minU), std::nextafter(base.minU, 1.0), std::nextafter(1.0, 0.0));
    const double a2 = 1.0 + 0.25 * (base.maxU - 1.0);
    const LevelDomainScan scan = levelDomainScan(mesh, map, pairs[1], {0.0, 0.0}, {a1, a2});
    Json levels = Json::array();
    for (const auto& e : scan.entries)
        levels.push_back({{"threshold", e.threshold}, {"above", e.above}, {"below", e.below}, {"total", e.total},
                          {"regime", e.regime}});
    r.results()["minU"] = base.minU;
    r.results()["maxU"] = base.maxU;
    r.results()["levels"] = levels;
    r.checkEqual("levelDomains.lowThreshold", static_cast<double>(scan.entries[0].total), 2.0);
    r.checkEqual("levelDomains.highThreshold", static_cast<double>(scan.entries[1].total), 3.0);

    const MiyamotoReport mr = miyamotoAudit(mesh, map, pairs, b);
    ctx.write("second_eigenfunction.txt", formatMiyamoto(mr));
    r.checkTrue("secondEigenfunction.even", mr.evenPass);
    r.checkTrue("secondEigenfunction.signs", mr.signPass);
    r.checkTrue("secondEigenfunction.criticalPoints", mr.criticalPass);

    Json courant = Json::array();
    for (int j = 1; j <= count; ++j) {
        const std::size_t c = nodalDomainCount(mesh, map, pairs[j - 1]);
        courant.push_back(c);
        r.checkAtMost("courant.u" + std::to_string(j), static_cast<double>(c), j);
    }
    r.results()["nodalDomains"] = courant;

    std::vector<double> u = pairs[1].values;
    for (double& x : u) x /= scan.scale;
    const ScalarField2D f = rasterize(mesh, map, u, "u2");
    writeField(f, ctx.path("u2.json"));
    r.artifact("u2.json");
    r.artifact("u2.csv");
    writeLevelPlot(ctx, "u2_low.svg", f, a1, "T(" + formatDouble(b) + ") u2, low threshold");
    writeLevelPlot(ctx, "u2_high.svg", f, a2, "T(" + formatDouble(b) + ") u2, high threshold");
}

void femNgon(Context& ctx) {
    Report& r = ctx.report();
    const int N = ctx.integer("n");
    const int level = ctx.integer("level");
    const int count = ctx.integer("count");
    const std::size_t raster = ctx.size("raster");
    const int j = ctx.integer("index");
    if (level < 2) throw UsageError("level must be at least 2");
    if (j < 2 || j >= count) throw UsageError("index must lie in [2, count)");
    const Mesh2D coarse = meshNgon(N, level - 1), mesh = meshNgon(N, level);
    r.results()["vertices"] = mesh.vertexCount();
    const auto pc = solveNeumann(coarse, count);
    const auto pairs = solveNeumann(mesh, count);
    checkResiduals(r, pairs);
    std::vector<double> vc, vf;
    for (const auto& p : pc) vc.push_back(p.value);
    for (const auto& p : pairs) vf.push_back(p.value);
    std::string csv = "index,coarse,fine,extrapolated\n";
    for (int i = 0; i < count; ++i)
        csv += std::to_string(i + 1) + "," + csvRow({vc[i], vf[i], richardson(vc[i], vf[i])});
    ctx.write("eigenvalues.csv", csv);

    const SimplicityCertificate cert = certifySimple(vc, vf, j);
    r.results()["simplicity"] = {{"index", j}, {"gapBelow", cert.gapBelow}, {"gapAbove", cert.gapAbove}};
    r.check("simple.gapBelow", cert.gapBelow, ">", 0.02, cert.gapBelow > 0.02);
    r.check("simple.gapAbove", cert.gapAbove, ">", 0.02, cert.gapAbove > 0.02);

    // u_j(M) = 1 at the midpoint M of the side A1 A2.
    const Point2 mid{0.5 * (1.0 + std::cos(2.0 * kPi / N)), 0.5 * std::sin(2.0 * kPi / N)};
    const RasterMap map = buildRasterMap(mesh, raster, raster);
    const LevelDomainScan base = levelDomainScan(mesh, map, pairs[j - 1], mid, {});
    const double a = ctx.isAuto("a") ? 1.0 + 0.25 * (base.maxU - 1.0) : ctx.real("a");
    const LevelDomainScan scan = levelDomainScan(mesh, map, pairs[j - 1], mid, {a});
    const auto& e = scan.entries[0];
    std::vector<double> u = pairs[j - 1].values;
    for (double& x : u) x /= scan.scale;
    const std::size_t meshAbove = meshLevelComponents(mesh, u, a, Side::above);
    const std::size_t meshBelow = meshLevelComponents(mesh, u, a, Side::below);
    r.results()["threshold"] = a;
    r.results()["raster"] = {{"above", e.above}, {"below", e.below}, {"total", e.total}};
    r.results()["meshGraph"] = {{"above", meshAbove}, {"below", meshBelow}, {"total", meshAbove + meshBelow}};
    r.checkEqual("nodalDomains.raster", static_cast<double>(e.total), N + 1);
    r.checkEqual("nodalDomains.meshGraph", static_cast<double>(meshAbove + meshBelow), N + 1);

    const ScalarField2D f = rasterize(mesh, map, u, "u" + std::to_string(j));
    writeField(f, ctx.path("u.json"));
    r.artifact("u.json");
    r.artifact("u.csv");
    writeLevelPlot(ctx, "u_level.svg", f, a, std::to_string(N) + "-gon u" + std::to_string(j) + " level curve");
}

void diskRef(Context& ctx) {
    Report& r = ctx.report();
    const int count = ctx.integer("count");
    const int N = ctx.integer("sides");
    const int level = ctx.integer("level");
    const double tol = ctx.real("tolerance");
    if (count < 2) throw UsageError("count must be at least 2");
    const auto ref = diskNeumannReference(count);
    const Mesh2D mesh = meshNgon(N, level);
    const auto pairs = solveNeumann(mesh, count);
    checkResiduals(r, pairs);
    std::string csv = "index,disk,m,k,fem,relative_error\n";
    Json rows = Json::array();
    for (int i = 0; i < count; ++i) {
        const double rel = i == 0 ? 0.0 : pairs[i].value / ref[i].value - 1.0;
        csv += std::to_string(i + 1) + "," + formatDouble(ref[i].value) + "," + std::to_string(ref[i].m) + "," +
               std::to_string(ref[i].k) + "," + formatDouble(pairs[i].value) + "," + formatDouble(rel) + "\n";
        rows.push_back({{"index", i + 1}, {"disk", ref[i].value}, {"m", ref[i].m}, {"k", ref[i].k},
                        {"fem", pairs[i].value}});
        if (i > 0) r.checkAtMost("relativeError.nu" + std::to_string(i + 1), std::abs(rel), tol);
    }
    ctx.write("disk_reference.csv", csv);
    r.results()["eigenvalues"] = rows;
    // Pairs of the disk (m >= 1) stay nearly double on the polygon; distinct
    // disk values stay ordered.
    for (int i = 1; i + 1 < count; ++i) {
        const bool pair = ref[i].m == ref[i + 1].m && ref[i].k == ref[i + 1].k;
        const double split = (pairs[i + 1].value - pairs[i].value) / pairs[i].value;
        const std::string name = "ordering.nu" + std::to_string(i + 1) + ".nu" + std::to_string(i + 2);
        if (pair)
            r.checkAtMost(name + ".pairSplit", split, tol);
        else
            r.check(name + ".gap", split, ">", tol, split > tol);
    }
}

void gladwellZhu(Context& ctx) {
    Report& r = ctx.report();
    const std::string geometry = ctx.str("geometry");
    const int nMax = ctx.integer("n-max");
    const std::vector<double> cList = ctx.reals("c-list");
    const int level = ctx.integer("level");
    Mesh2D mesh;
    if (geometry == "triangle")
        mesh = meshTriangle(ctx.real("b"), level);
    else if (geometry == "ngon")
        mesh = meshNgon(ctx.integer("sides"), level);
    else
        throw UsageError("geometry must be 'triangle' or 'ngon'");
    if (nMax < 2) throw UsageError("n-max must be at least 2");
    const auto pairs = solveDirichlet(mesh, nMax);
    checkResiduals(r, pairs);
    ctx.write("eigenvalues.csv", eigenTable(pairs));
    const RasterMap map = buildRasterMap(mesh, ctx.size("raster"), ctx.size("raster"));
    const GladwellZhuReport gz = gladwellZhuCheck(mesh, map, pairs, nMax, cList);
    Json rows = Json::array();
    for (const auto& e : gz.entries) {
        rows.push_back({{"n", e.n}, {"c", e.c}, {"count", e.count}, {"bound", e.bound}});
        std::ostringstream name;
        name << "positiveDomains.n" << e.n << ".c" << formatDouble(e.c);
        r.check(name.str(), static_cast<double>(e.count), "<=", static_cast<double>(e.bound), e.pass);
    }
    r.results()["vertices"] = mesh.vertexCount();
    r.results()["cases"] = rows;
}

// ---------------------------------------------------------------- algebraic

std::vector<double> readNumbers(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path.string() + "'");
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        for (const auto& part : splitList(tok)) v.push_back(parseReal(path.string(), part));
    }
    if (v.empty()) throw UsageError("'" + path.string() + "' holds no numbers");
    return v;
}

void qho(Context& ctx) {
    Report& r = ctx.report();
    const std::size_t res = ctx.size("resolution");
    if (ctx.has("coeffs")) {
        const std::vector<double> c = readNumbers(ctx.str("coeffs"));
        const QhoCombination q = qhoCombination(c);
        const PlaneNodalReport p = countPolyNodalPlane(q.poly, q.windowRadius, res);
        r.results()["n"] = c.size();
        r.results()["windowRadius"] = q.windowRadius;
        r.results()["count"] = {{"positive", p.positive}, {"negative", p.negative}, {"total", p.total},
                                {"unbounded", p.unbounded}};
        r.checkAtMost("nodalDomains.bound", static_cast<double>(p.total), static_cast<double>(c.size()));
        return;
    }
    const int nMin = ctx.integer("n-min"), nMax = ctx.integer("n");
    const int trials = ctx.integer("trials");
    if (nMin < 1 || nMax < nMin || trials < 1) throw UsageError("need 1 <= n-min <= n and trials >= 1");
    std::string csv = "n,trial,count\n";
    Json table = Json::array();
    const int first = static_cast<int>(ctx.config().seed) * trials;
    for (int n = nMin; n <= nMax; ++n) {
        const QhoTrialSummary s = qhoTrials(n, trials, res, first);
        for (int t = 0; t < trials; ++t)
            csv += std::to_string(n) + "," + std::to_string(first + t) + "," + std::to_string(s.counts[t]) + "\n";
        table.push_back({{"n", n}, {"trials", trials}, {"maxCount", s.maxCount}, {"violations", s.violations}});
        r.checkAtMost("trials.n" + std::to_string(n) + ".maxCount", static_cast<double>(s.maxCount), n);
    }
    ctx.write("qho_trials.csv", csv);
    r.results()["trials"] = table;

    const int kMax = ctx.integer("lines-max");
    const std::size_t lineRes = ctx.size("lines-resolution");
    Json lines = Json::array();
    for (int k = 1; k <= kMax; ++k) {
        const double band = singularBandFor(k == 1 ? kPi / 2 : kPi / k);
        const PlaneNodalReport p = countPolyNodalPlane(tangentLinesPolynomial(k), 5.0, lineRes, band);
        lines.push_back({{"k", k}, {"count", p.total}, {"expected", k * (k + 1) / 2 + 1}});
        r.checkEqual("lines.k" + std::to_string(k), static_cast<double>(p.total), k * (k + 1) / 2 + 1);
    }
    r.results()["lines"] = lines;
}

Poly3 readPoly3(const std::filesystem::path& path, int& degree) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path.string() + "'");
    std::vector<std::array<double, 4>> terms;
    std::string line;
    degree = 0;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto parts = splitList(line);
        if (parts.empty()) continue;
        if (parts.size() != 4) throw UsageError("'" + path.string() + "': expected 'i j k coefficient' lines");
        std::array<double, 4> t{};
        for (int q = 0; q < 3; ++q) {
            t[q] = static_cast<double>(parseInteger(path.string(), parts[q]));
            if (t[q] < 0) throw UsageError("'" + path.string() + "': negative exponent");
        }
        t[3] = parseReal(path.string(), parts[3]);
        degree = std::max(degree, static_cast<int>(t[0] + t[1] + t[2]));
        terms.push_back(t);
    }
    if (terms.empty()) throw UsageError("'" + path.string() + "' holds no terms");
    Poly3 p(degree);
    for (const auto& t : terms) p.at(static_cast<int>(t[0]), static_cast<int>(t[1]), static_cast<int>(t[2])) += t[3];
    return p;
}

void spherePoly(Context& ctx) {
    Report& r = ctx.report();
    const std::size_t nt = ctx.size("ntheta"), np = ctx.size("nphi");
    if (ctx.has("poly")) {
        int degree = 0;
        const Poly3 p = readPoly3(ctx.str("poly"), degree);
        const SphereBoundReport b = countPolyOnSphere(p, nt, np);
        r.results()["degree"] = degree;
        r.results()["count"] = b.count;
        r.results()["bound8"] = b.bound8;
        r.results()["bound32"] = b.bound32;
        r.checkAtMost("nodalDomains.bound8", static_cast<double>(b.count), static_cast<double>(b.bound8));
        r.checkAtMost("nodalDomains.bound32", static_cast<double>(b.count), static_cast<double>(b.bound32));
        return;
    }
    const int degree = ctx.integer("degree"), trials = ctx.integer("trials");
    if (degree < 1 || trials < 1) throw UsageError("need degree >= 1 and trials >= 1");
    const int first = static_cast<int>(ctx.config().seed) * trials;
    const SphereTrialSummary s = sphereTrials(degree, trials, nt, np, first);
    std::string csv = "trial,count\n";
    for (int t = 0; t < trials; ++t) csv += std::to_string(first + t) + "," + std::to_string(s.counts[t]) + "\n";
    ctx.write("sphere_trials.csv", csv);
    r.results()["degree"] = degree;
    r.results()["maxCount"] = s.maxCount;
    r.results()["aboveSquarePlusOne"] = s.overEcp;
    r.checkAtMost("trials.maxCount.bound8", static_cast<double>(s.maxCount), 8.0 * degree * degree);
    r.checkAtMost("trials.maxCount.bound32", static_cast<double>(s.maxCount), 32.0 * degree * degree);
}

// ---------------------------------------------------------------- count

void countField(Context& ctx) {
    Report& r = ctx.report();
    if (!ctx.has("input")) throw UsageError("count needs --input");
    const std::filesystem::path in = ctx.str("input");
    if (!std::filesystem::exists(in)) throw UsageError("input '" + in.string() + "' does not exist");
    ScalarField2D f;
    try {
        f = readField(in);
    } catch (const std::exception& e) {
        throw UsageError("cannot read field '" + in.string() + "': " + e.what());
    }
    const double a = ctx.real("threshold");
    Side side;
    try {
        side = parseSide(ctx.str("side"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    NodalOptions opts;
    const int conn = ctx.integer("connectivity");
    if (conn != 4 && conn != 8) throw UsageError("connectivity must be 4 or 8");
    opts.connectivity = conn == 4 ? Connectivity::four : Connectivity::eight;
    opts.relTolerance = ctx.real("tolerance");
    const LevelSetReport rep = countLevelComponents(f, a, side, opts);
    r.results()["topology"] = topologyName(f.topology);
    r.results()["resolution"] = rep.resolution;
    r.results()["side"] = sideName(rep.side);
    r.results()["threshold"] = a;
    r.results()["componentCount"] = rep.componentCount;
    r.results()["componentCells"] = sizesJson(rep.componentCells);
    r.results()["bandCells"] = rep.bandCells;
    ctx.write("level.svg", renderContourSVG(f, a));
}

std::vector<ParamSpec> sphereParams() {
    return {{"m", "1", "azimuthal order m >= 1"},
            {"n", "auto", "construction integer n = 3 * 2^k, or auto for the smallest passing one"},
            {"alpha", "1/32", "plateau fraction alpha in (0, 1/24)"}};
}

std::vector<ExperimentSpec> buildRegistry() {
    std::vector<ExperimentSpec> v;
    v.push_back({"torus-example1", {"torus", "example1"}, "smooth torus metric with many components of {Phi > 1}",
                 {{"resolution", "1024", "x resolution of the field (multiple of 4)"},
                  {"ny", "256", "y resolution of the field"},
                  {"m", "auto", "y-frequency; auto doubles from 1 until Q > 0"}},
                 torusExample1});
    v.push_back({"torus-example2", {"torus", "example2"}, "analytic torus metric with n components of {Phi > 1}",
                 {{"n", "5", "x-frequency n >= 3"},
                  {"a", "auto", "amplitude in [0, 1), auto = 0.75/(n^2+1)"},
                  {"nx", "1024", "x resolution"},
                  {"ny", "256", "y resolution"}},
                 torusExample2});
    v.push_back({"spectrum-torus", {"spectrum", "torus"}, "sorted spectrum of the torus metric Q_a",
                 {{"n", "3", "x-frequency of Q_a"},
                  {"a", "0.01", "amplitude"},
                  {"count", "8", "number of eigenvalues"},
                  {"grid", "512", "grid points of the 1D problems"},
                  {"kmax", "3", "largest y-frequency"}},
                 spectrumTorus});
    v.push_back({"perturb", {"perturb"}, "second-order perturbation coefficients and labelling",
                 {{"n", "3", "x-frequency n >= 3"},
                  {"a-list", "0.02,0.01,0.005", "amplitudes for the extrapolation"},
                  {"grid", "512", "grid points"},
                  {"labelling-a", "0.01", "amplitude of the labelling check (n = 3)"}},
                 perturb});
    auto sp = sphereParams();
    auto withRes = [&](std::vector<ParamSpec> p, bool verify, bool count) {
        if (verify) {
            p.push_back({"ntheta", "4096", "theta rows of the fine residual grid"});
            p.push_back({"nphi", "32", "phi columns of the residual grid"});
        }
        if (count) p.push_back({"count-resolutions", "1024,2048,4096", "theta resolutions for the component counts"});
        return p;
    };
    v.push_back({"sphere", {}, "sphere construction: build, verify and count", withRes(sp, true, true), sphereAll});
    v.push_back({"sphere-build", {"sphere", "build"}, "build and audit the sphere profile", sp, sphereBuild});
    auto spFile = sp;
    spFile.push_back({"profile", "", "profile.json written by sphere build (overrides m, n, alpha)"});
    v.push_back({"sphere-verify", {"sphere", "verify"}, "eigen-residual of the sphere construction",
                 withRes(spFile, true, false), sphereVerify});
    auto spCount = withRes(spFile, false, true);
    spCount.push_back({"threshold", "1", "level of Phi (only 1 is supported)"});
    v.push_back({"sphere-count", {"sphere", "count"}, "components of {Phi > 1} at growing resolution", spCount,
                 sphereCount});
    v.push_back({"fem-triangle", {"fem", "triangle"}, "Neumann eigenfunctions of the triangle T(b)",
                 {{"b", "0.5", "half base, 0 < b <= 1"},
                  {"count", "6", "number of eigenpairs"},
                  {"levels", "8", "mesh refinement level"},
                  {"raster", "1024", "raster resolution for counting"}},
                 femTriangle});
    v.push_back({"fem-ngon", {"fem", "ngon"}, "nodal domains of the sixth Neumann eigenfunction of the N-gon",
                 {{"n", "9", "number of sides"},
                  {"level", "7", "mesh refinement level (the coarse level is one less)"},
                  {"count", "8", "number of eigenpairs"},
                  {"index", "6", "eigenfunction index"},
                  {"a", "auto", "threshold, auto = 1 + (max u - 1)/4"},
                  {"raster", "1024", "raster resolution"}},
                 femNgon});
    v.push_back({"disk-ref", {"fem", "disk-ref"}, "polygon eigenvalues against the Bessel disk reference",
                 {{"count", "6", "number of eigenvalues"},
                  {"sides", "48", "sides of the polygon"},
                  {"level", "5", "mesh refinement level"},
                  {"tolerance", "0.02", "relative tolerance"}},
                 diskRef});
    v.push_back({"gz", {"fem", "gz"}, "sign domains of u_n + c u_1 (Dirichlet)",
                 {{"geometry", "triangle", "triangle or ngon"},
                  {"b", "0.5", "half base of the triangle"},
                  {"sides", "9", "sides of the polygon"},
                  {"level", "8", "mesh refinement level"},
                  {"n-max", "6", "largest index n"},
                  {"c-list", "0.1,1,10", "coefficients c"},
                  {"raster", "1024", "raster resolution"}},
                 gladwellZhu});
    v.push_back({"qho", {"qho"}, "nodal domains of oscillator combinations",
                 {{"coeffs", "", "file of coefficients over the first n basis functions (single count)"},
                  {"n", "15", "largest number of basis functions"},
                  {"n-min", "1", "smallest number of basis functions"},
                  {"trials", "100", "trials per n"},
                  {"resolution", "1024", "grid resolution of the disk window"},
                  {"lines-max", "6", "largest k of the tangent-lines family"},
                  {"lines-resolution", "2048", "grid resolution for the lines family"}},
                 qho});
    v.push_back({"spherepoly", {"spherepoly"}, "nodal domains of harmonic polynomials on the sphere",
                 {{"poly", "", "file of 'i j k coefficient' lines (single count)"},
                  {"degree", "4", "degree of the random harmonics"},
                  {"trials", "50", "number of trials"},
                  {"ntheta", "512", "theta resolution"},
                  {"nphi", "1024", "phi resolution"}},
                 spherePoly});
    v.push_back({"count", {"count"}, "components of a stored field above or below a threshold",
                 {{"input", "", "field header JSON"},
                  {"threshold", "0", "threshold a"},
                  {"side", "above", "above, below or both-nodal"},
                  {"connectivity", "4", "4 or 8"},
                  {"tolerance", "1e-12", "equality band relative to max |v|"}},
                 countField});
    return v;
}

}  // namespace

const std::string& Context::str(const std::string& key) const {
    const auto it = cfg_.params.find(key);
    if (it == cfg_.params.end()) throw std::logic_error("parameter '" + key + "' is not declared");
    return it->second;
}

int Context::integer(const std::string& key) const {
    const long long v = parseInteger(key, str(key));
    if (v < -1000000000LL || v > 1000000000LL) throw UsageError("parameter '" + key + "' out of range");
    return static_cast<int>(v);
}

std::size_t Context::size(const std::string& key) const {
    const long long v = parseInteger(key, str(key));
    if (v <= 0 || v > (1LL << 24)) throw UsageError("parameter '" + key + "' must be a positive size");
    return static_cast<std::size_t>(v);
}

double Context::real(const std::string& key) const { return parseReal(key, str(key)); }

std::vector<double> Context::reals(const std::string& key) const {
    std::vector<double> v;
    for (const auto& s : splitList(str(key))) v.push_back(parseReal(key, s));
    if (v.empty()) throw UsageError("parameter '" + key + "' is empty");
    return v;
}

std::vector<std::size_t> Context::sizes(const std::string& key) const {
    std::vector<std::size_t> v;
    for (const auto& s : splitList(str(key))) {
        const long long x = parseInteger(key, s);
        if (x <= 0) throw UsageError("parameter '" + key + "' must hold positive sizes");
        v.push_back(static_cast<std::size_t>(x));
    }
    if (v.empty()) throw UsageError("parameter '" + key + "' is empty");
    return v;
}

void Context::write(const std::string& name, const std::string& content) {
    std::ofstream out(path(name), std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write '" + path(name).string() + "'");
    report_.artifact(name);
}

const std::vector<ExperimentSpec>& experiments() {
    static const std::vector<ExperimentSpec> registry = buildRegistry();
    return registry;
}

const ExperimentSpec* findExperiment(const std::string& id) {
    for (const auto& e : experiments())
        if (e.id == id) return &e;
    return nullptr;
}

int runExperiment(const ExperimentSpec& spec, const RunConfig& cfgIn) {
    RunConfig cfg = cfgIn;
    cfg.experiment = spec.id;
    for (const auto& [k, v] : cfg.params) {
        const bool known = std::any_of(spec.params.begin(), spec.params.end(), [&](const ParamSpec& p) { return p.key == k; });
        if (!known) throw UsageError("unknown parameter '" + k + "' for " + spec.id);
    }
    for (const auto& p : spec.params) cfg.params.emplace(p.key, p.defaultValue);

    std::error_code ec;
    std::filesystem::create_directories(cfg.outputDir, ec);
    if (ec) throw UsageError("cannot create output directory '" + cfg.outputDir.string() + "'");

    Report report(cfg);
    Context ctx(cfg, report);
    try {
        spec.run(ctx);
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const ConstructionError& e) {
        throw UsageError(e.what());
    } catch (const std::exception& e) {
        report.error(e.what());
    }
    const std::string text = report.dump();
    std::ofstream out(cfg.outputDir / "report.json", std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write report.json");
    return report.pass() ? 0 : 1;
}

}  // namespace speclab::cli
