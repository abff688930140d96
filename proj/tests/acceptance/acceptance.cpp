// Acceptance runner: `acceptance [criterion...]` prints one PASS/FAIL line per
// criterion and exits non-zero if any fails. Tolerances and runtime limits are
// fixed here.
#include "support/oracles.hpp"

#include "speclab/bessel.hpp"
#include "speclab/fem.hpp"
#include "speclab/fem_scans.hpp"
#include "speclab/mesh.hpp"
#include "speclab/nodal.hpp"
#include "speclab/poly_nodal.hpp"
#include "speclab/spectrum1d.hpp"
#include "speclab/sphere.hpp"
#include "speclab/torus.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace speclab;
using namespace speclab::testing;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs body and adds a runtime check against limit seconds.
template <class F>
void timed(Outcome& o, const std::string& what, double limit, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double s = seconds(t0);
    o.detail << " " << what << " " << std::fixed;
    o.detail.precision(1);
    o.detail << s << "s";
    o.detail.unsetf(std::ios::fixed);
    o.detail.precision(6);
    o.require(s < limit, what + " runtime " + std::to_string(s) + "s >= " + std::to_string(limit) + "s");
}

// 1. Example 2 on the torus.
void torusCount(Outcome& o) {
    timed(o, "run", 10.0, [&] {
        const TorusConstruction c = buildExample2(5, defaultAmplitude(5), 1024);
        const auto rep = countLevelComponents(phiExcessField(c, 1024, 256), 0.0, Side::above);
        o.detail << " a=" << c.a << " components=" << rep.componentCount;
        o.require(rep.componentCount == 5, "5 components above 1");
    });
}

// 2. Perturbation fits against -2n^2/(n^2 - 4).
void perturbationFits(Outcome& o) {
    const std::vector<double> as{0.02, 0.01, 0.005};
    for (int n : {3, 4, 5}) {
        timed(o, "n=" + std::to_string(n), 60.0, [&] {
            const double expected = -2.0 * n * n / (n * n - 4.0);
            const PerturbationCheck r = verifyPerturbation(n, as, 512);
            const double es = std::abs(r.sigma2Fit / expected - 1.0), et = std::abs(r.tau2Fit / expected - 1.0);
            o.detail << " sigma2=" << r.sigma2Fit << " tau2=" << r.tau2Fit << " expected=" << expected;
            o.require(es <= 0.02, "sigma fit within 2% for n=" + std::to_string(n));
            o.require(et <= 0.02, "tau fit within 2% for n=" + std::to_string(n));
        });
    }
}

// 3. The eigenvalue 1 has labelling 4.
void labelling(Outcome& o) {
    timed(o, "run", 60.0, [&] {
        const auto t = torusSpectrum(weightQa(3, 0.01, 512), 3, 8);
        o.detail << " lambda2..5=" << t[1].value << "," << t[2].value << "," << t[3].value << "," << t[4].value;
        o.require(t[1].value < 1.0 - 1e-6 && t[2].value < 1.0 - 1e-6, "lambda2, lambda3 < 1 - 1e-6");
        o.require(std::abs(t[3].value - 1.0) <= 1e-8 && std::abs(t[4].value - 1.0) <= 1e-8, "lambda4 = lambda5 = 1");
    });
}

// 4. Sphere construction bounds.
void sphereBounds(Outcome& o) {
    timed(o, "run", 120.0, [&] {
        for (int m : {1, 3}) {
            const double alpha = 1.0 / 32;
            const SphereBuild b = buildSphereProfile(m, alpha);
            const SphereProfile p(b.params);
            std::string failed;
            for (const AuditItem& it : b.audit.items)
                if (it.lemma && !it.pass) failed += " " + it.name;
            o.require(b.audit.lemmasPass, "lemma items for m=" + std::to_string(m) + ":" + failed);
            double worst = 0.0;
            for (int i = -400000; i <= 400000; ++i)
                worst = std::max(worst, std::abs(p.Q(1.25 * p.delta() * i / 400000.0) - 1.0));
            const double bound = (1 + 12 * alpha) / (m + 1);
            const double eq = p.Q(0.0) - m / (m + 1.0);
            o.detail << " m=" << m << ": n=" << b.params.n << " max|Q-1|=" << worst << " (bound " << bound
                     << ") Q(pi/2)-m/(m+1)=" << eq;
            o.require(worst <= bound, "max|Q-1| bound for m=" + std::to_string(m));
            o.require(std::abs(eq) <= 1e-8, "Q(pi/2) = m/(m+1) within 1e-8 for m=" + std::to_string(m));
        }
    });
}

SphereProfile defaultSphere() { return SphereProfile(buildSphereProfile(1, 1.0 / 32).params); }

// 5. Sphere eigen-residual.
void sphereResidualCheck(Outcome& o) {
    timed(o, "run", 120.0, [&] {
        const SphereProfile p = defaultSphere();
        const SphereVerification v = verifySphereEigen(p, 4096, 32, 1e-5);
        o.detail << " residual(2048)=" << v.coarse.residual << " residual(4096)=" << v.fine.residual
                 << " order=" << v.observedOrder;
        o.require(v.fine.residual < 1e-5 * 2, "residual < 2e-5 at 4096");
        o.require(v.observedOrder >= 3.5, "observed order >= 3.5 between 2048 and 4096");
    });
}

// 6. Sphere component growth.
void sphereGrowth(Outcome& o) {
    timed(o, "run", 120.0, [&] {
        const SphereProfile p = defaultSphere();
        std::size_t prev = 0;
        for (std::size_t nt : {1024u, 2048u, 4096u}) {
            const SphereComponentCount c = sphereComponentCount(p, nt);
            o.detail << " " << nt << ":" << c.count;
            o.require(c.count >= prev, "nondecreasing at " + std::to_string(nt));
            o.require(c.count == c.oracleCount, "matches positive runs of v at " + std::to_string(nt));
            prev = c.count;
        }
        o.require(prev >= 5, ">= 5 components at 4096");
    });
}

// 7. Level domains of the second Neumann eigenfunction of T(0.5).
void triangleLevels(Outcome& o) {
    timed(o, "run", 180.0, [&] {
        const Mesh2D mesh = meshTriangle(0.5, 8);
        o.detail << " vertices=" << mesh.vertexCount();
        o.require(mesh.vertexCount() >= 50000, ">= 5e4 vertices");
        const auto pairs = solveNeumann(mesh, 3);
        const RasterMap map = buildRasterMap(mesh, 1024, 1024);
        const LevelDomainScan base = levelDomainScan(mesh, map, pairs[1], {0, 0}, {});
        const double a1 =
            std::clamp(0.5 * (1.0 + base.minU), std::nextafter(base.minU, 1.0), std::nextafter(1.0, 0.0));
        const double a2 = 1.0 + 0.25 * (base.maxU - 1.0);
        const LevelDomainScan s = levelDomainScan(mesh, map, pairs[1], {0, 0}, {a1, a2});
        o.detail << " minU=" << base.minU << " maxU=" << base.maxU << " counts=" << s.entries[0].total << ","
                 << s.entries[1].total;
        o.require(s.entries[0].total == 2, "2 domains at a = " + std::to_string(a1));
        o.require(s.entries[1].total == 3, "3 domains at a = " + std::to_string(a2));
    });
}

// 8. N + 1 nodal domains of u6 - a on the regular N-gon.
void ngonCounterexample(Outcome& o) {
    for (int N : {9, 12}) {
        timed(o, "N=" + std::to_string(N), 300.0, [&] {
            const int level = 7, j = 6;
            const auto pc = solveNeumann(meshNgon(N, level - 1), 8);
            const Mesh2D mesh = meshNgon(N, level);
            const auto pf = solveNeumann(mesh, 8);
            std::vector<double> vc, vf;
            for (const auto& p : pc) vc.push_back(p.value);
            for (const auto& p : pf) vf.push_back(p.value);
            const SimplicityCertificate cert = certifySimple(vc, vf, j);
            o.require(cert.pass, "nu6 simple for N=" + std::to_string(N));
            const Point2 mid{0.5 * (1.0 + std::cos(2.0 * kPi / N)), 0.5 * std::sin(2.0 * kPi / N)};
            const RasterMap map = buildRasterMap(mesh, 1024, 1024);
            const LevelDomainScan base = levelDomainScan(mesh, map, pf[j - 1], mid, {});
            const double a = 1.0 + 0.25 * (base.maxU - 1.0);
            const LevelDomainScan s = levelDomainScan(mesh, map, pf[j - 1], mid, {a});
            std::vector<double> u = pf[j - 1].values;
            for (double& x : u) x /= s.scale;
            const std::size_t graph = meshLevelComponents(mesh, u, a, Side::above) +
                                      meshLevelComponents(mesh, u, a, Side::below);
            o.detail << " N=" << N << ": gaps=" << cert.gapBelow << "," << cert.gapAbove << " a=" << a
                     << " raster=" << s.entries[0].total << " mesh=" << graph;
            o.require(s.entries[0].total == static_cast<std::size_t>(N + 1), "raster count N+1");
            o.require(graph == static_cast<std::size_t>(N + 1), "P1 interpolant count N+1");
        });
    }
}

// 9. Disk reference from the P48 polygon.
void diskReference(Outcome& o) {
    timed(o, "run", 300.0, [&] {
        const double j11 = besselPrimeZero(1, 1.5, 2.0), j21 = besselPrimeZero(2, 2.8, 3.3),
                     j01 = besselPrimeZero(0, 3.5, 4.0);
        const double ref[5] = {j11 * j11, j11 * j11, j21 * j21, j21 * j21, j01 * j01};
        const auto pairs = solveNeumann(meshNgon(48, 5), 7);
        for (int i = 0; i < 5; ++i) {
            const double rel = pairs[i + 1].value / ref[i] - 1.0;
            o.detail << " nu" << i + 2 << "=" << pairs[i + 1].value << "(" << rel << ")";
            o.require(std::abs(rel) <= 0.02, "nu" + std::to_string(i + 2) + " within 2%");
        }
        // Ordering: pairs stay together, distinct disk values stay apart.
        auto split = [&](int a, int b) { return (pairs[b].value - pairs[a].value) / pairs[a].value; };
        o.require(split(1, 2) <= 0.02 && split(3, 4) <= 0.02, "double eigenvalues of the disk stay paired");
        o.require(split(2, 3) > 0.02 && split(4, 5) > 0.02 && split(5, 6) > 0.02, "ordering of distinct values");
        o.require(std::abs(j11 * j11 - 3.390) < 1e-3, "leading disk value 3.390");
    });
}

// 10. Positive components of u_n + c u_1 on T(0.5), n = 1..6.
void gladwellZhu(Outcome& o) {
    timed(o, "run", 300.0, [&] {
        const Mesh2D mesh = meshTriangle(0.5, 8);
        const auto pairs = solveDirichlet(mesh, 6);
        const RasterMap map = buildRasterMap(mesh, 1024, 1024);
        const std::vector<double> cs{0.1, 1.0, 10.0};
        const GladwellZhuReport r = gladwellZhuCheck(mesh, map, pairs, 6, cs);
        // n = 1: u_1 + c u_1 = (1 + c) u_1 with u_1 > 0.
        std::vector<double> u1 = pairs[0].values;
        double sum = 0.0;
        for (double x : u1) sum += x;
        if (sum < 0)
            for (double& x : u1) x = -x;
        std::size_t cases = 0, failures = 0;
        for (double c : cs) {
            std::vector<double> v(u1.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 + c) * u1[i];
            const std::size_t count =
                countLevelComponents(rasterize(mesh, map, v), 0.0, Side::above).componentCount;
            ++cases;
            o.detail << " n=1,c=" << c << ":" << count;
            if (count > 0) ++failures;
        }
        for (const auto& e : r.entries) {
            ++cases;
            o.detail << " n=" << e.n << ",c=" << e.c << ":" << e.count;
            if (!e.pass) ++failures;
        }
        o.detail << " cases=" << cases << " over bound=" << failures;
        o.require(cases == 18, "18 cases");
        o.require(failures == 0, "count <= n - 1 in every case");
    });
}

// 11. Oscillator, k-lines and sphere polynomial bounds.
void polynomialBounds(Outcome& o) {
    timed(o, "run", 300.0, [&] {
        std::size_t worst = 0;
        for (int n = 1; n <= 15; ++n) {
            const QhoTrialSummary s = qhoTrials(n, 100, 1024);
            o.require(s.violations == 0, "oscillator trials within n for n=" + std::to_string(n));
            worst = std::max(worst, s.maxCount);
        }
        o.detail << " qho max=" << worst;
        o.detail << " lines:";
        for (int k = 1; k <= 6; ++k) {
            const double band = singularBandFor(k == 1 ? kPi / 2 : kPi / k);
            const PlaneNodalReport p = countPolyNodalPlane(tangentLinesPolynomial(k), 5.0, 2048, band);
            o.detail << " " << p.total;
            o.require(p.total == static_cast<std::size_t>(k * (k + 1) / 2 + 1), "k lines for k=" + std::to_string(k));
        }
        const SphereTrialSummary s = sphereTrials(4, 50, 512, 1024);
        o.detail << " sphere max=" << s.maxCount;
        o.require(s.maxCount <= 128, "sphere trials <= 128");
    });
}

// 12. Union-find against the BFS oracle on the corpus.
void oracleEquivalence(Outcome& o) {
    timed(o, "run", 30.0, [&] {
        std::size_t fields = 0;
        for (const CorpusEntry& e : fieldCorpus()) {
            const ScalarField2D f = e.build(128);
            const LevelSetReport r = countLevelComponents(f, e.threshold, e.side);
            const OracleReport b = bfsComponents(f, e.threshold, e.side);
            o.require(r.componentCount == b.count && r.componentCells == b.sizes, e.name);
            ++fields;
        }
        o.detail << " fields=" << fields;
        o.require(fields == 20, "20 corpus fields");
    });
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> c{
        {"torus example 2 count", torusCount},
        {"perturbation coefficients", perturbationFits},
        {"labelling of the eigenvalue 1", labelling},
        {"sphere construction bounds", sphereBounds},
        {"sphere eigen-residual", sphereResidualCheck},
        {"sphere component growth", sphereGrowth},
        {"triangle level counts", triangleLevels},
        {"N-gon counterexample", ngonCounterexample},
        {"disk reference", diskReference},
        {"Gladwell-Zhu property", gladwellZhu},
        {"oscillator and polynomial bounds", polynomialBounds},
        {"oracle equivalence", oracleEquivalence},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 12; ++i) which.push_back(i);
    int failed = 0;
    for (int id : which) {
        if (id < 1 || id > 12) {
            std::fprintf(stderr, "unknown criterion %d\n", id);
            return 2;
        }
        const auto& [name, run] = criteria()[id - 1];
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::printf("criterion %2d %s: %s%s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
