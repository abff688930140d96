#include "oracles.hpp"

#include "speclab/torus.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace speclab::testing {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::size_t> neighbours(const DomainTopology& t, std::size_t k, Connectivity conn) {
    std::vector<std::size_t> out;
    const std::size_t R = gridRows(t), C = gridCols(t);
    bool wrapR = false, wrapC = false, caps = false;
    if (std::holds_alternative<TorusPeriodic>(t)) wrapR = wrapC = true;
    if (const auto* s = std::get_if<SphereLatLong>(&t)) {
        wrapC = true;
        caps = s->hasCaps();
    }
    const std::size_t north = R * C, south = R * C + 1;
    if (caps && (k == north || k == south)) {
        const std::size_t row = k == north ? 0 : R - 1;
        for (std::size_t j = 0; j < C; ++j) out.push_back(row * C + j);
        return out;
    }
    const long i = static_cast<long>(k / C), j = static_cast<long>(k % C);
    std::vector<std::pair<long, long>> steps{{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    if (conn == Connectivity::eight) {
        steps.push_back({-1, -1});
        steps.push_back({-1, 1});
        steps.push_back({1, -1});
        steps.push_back({1, 1});
    }
    for (auto [di, dj] : steps) {
        long ni = i + di, nj = j + dj;
        if (ni < 0 || ni >= static_cast<long>(R)) {
            if (!wrapR) continue;
            ni = (ni + static_cast<long>(R)) % static_cast<long>(R);
        }
        if (nj < 0 || nj >= static_cast<long>(C)) {
            if (!wrapC) continue;
            nj = (nj + static_cast<long>(C)) % static_cast<long>(C);
        }
        const std::size_t q = static_cast<std::size_t>(ni) * C + static_cast<std::size_t>(nj);
        if (q != k) out.push_back(q);
    }
    if (caps && i == 0) out.push_back(north);
    if (caps && i == static_cast<long>(R) - 1) out.push_back(south);
    return out;
}

std::vector<std::size_t> runBfs(const ScalarField2D& f, const std::vector<int>& cls, int sign, Connectivity conn) {
    std::vector<std::size_t> sizes;
    std::vector<char> seen(cls.size(), 0);
    for (std::size_t s = 0; s < cls.size(); ++s) {
        if (seen[s] || cls[s] != sign) continue;
        std::deque<std::size_t> queue{s};
        seen[s] = 1;
        std::size_t size = 0;
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            ++size;
            for (std::size_t q : neighbours(f.topology, k, conn))
                if (!seen[q] && cls[q] == sign) {
                    seen[q] = 1;
                    queue.push_back(q);
                }
        }
        sizes.push_back(size);
    }
    return sizes;
}

double trigSum(Rng& rng, int terms, double x, double y, std::vector<double>& coeff) {
    if (coeff.empty())
        for (int t = 0; t < terms; ++t) {
            coeff.push_back(rng.integer(0, 4));
            coeff.push_back(rng.integer(0, 4));
            coeff.push_back(rng.uniform(-1, 1));
            coeff.push_back(rng.uniform(0, 2 * kPi));
        }
    double v = 0.0;
    for (std::size_t t = 0; t < coeff.size(); t += 4) v += coeff[t + 2] * std::cos(coeff[t] * x + coeff[t + 1] * y + coeff[t + 3]);
    return v;
}

ScalarField2D planar(std::size_t n, double lo, double hi, const std::function<bool(double, double)>& inside,
                     const std::function<double(double, double)>& f) {
    PlanarMasked g{n, n, lo, hi, lo, hi, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.mask[i * n + j] = inside(g.x(i), g.y(j)) ? 1 : 0;
    return samplePlanar(g, f);
}

std::vector<CorpusEntry> makeCorpus() {
    std::vector<CorpusEntry> c;
    auto torus = [](std::function<double(double, double)> f) {
        return [f](std::size_t n) { return sampleTorus(n, n, f); };
    };
    auto sphere = [](std::function<double(double, double)> f, PolePolicy p = PolePolicy::cap) {
        return [f, p](std::size_t n) { return sampleSphere(n, 2 * n, f, {}, p); };
    };
    auto disk = [](std::function<double(double, double)> f) {
        return [f](std::size_t n) { return planar(n, -1.0, 1.0, [](double x, double y) { return x * x + y * y < 1.0; }, f); };
    };
    auto box = [](std::function<double(double, double)> f) {
        return [f](std::size_t n) { return planar(n, -1.0, 1.0, [](double, double) { return true; }, f); };
    };

    c.push_back({"torus cos x cos y", torus([](double x, double y) { return std::cos(x) * std::cos(y); }), 0.0,
                 Side::bothNodal, 0});
    c.push_back({"torus sin x", torus([](double x, double) { return std::sin(x); }), 0.3, Side::above, 32});
    c.push_back({"torus cos x + cos y", torus([](double x, double y) { return std::cos(x) + std::cos(y); }), 0.5,
                 Side::below, 32});
    c.push_back({"torus mixed modes",
                 torus([](double x, double y) { return std::cos(2 * x) * std::cos(3 * y) + 0.3 * std::sin(x + y); }),
                 0.1, Side::bothNodal, 64});
    c.push_back({"torus example 2 (n = 5)",
                 [](std::size_t n) {
                     static const TorusConstruction t = buildExample2(5, defaultAmplitude(5), 1024);
                     return phiField(t, n, n);
                 },
                 1.0, Side::above, 64});
    c.push_back({"torus exp sin", torus([](double x, double y) { return std::exp(std::sin(x)) + std::cos(2 * y); }),
                 1.2, Side::above, 32});
    c.push_back({"torus sin 3x sin 2y", torus([](double x, double y) { return std::sin(3 * x) * std::sin(2 * y); }),
                 0.2, Side::below, 32});
    c.push_back({"torus random trig",
                 [](std::size_t n) {
                     Rng rng(0x70);
                     std::vector<double> coeff;
                     trigSum(rng, 6, 0, 0, coeff);
                     return sampleTorus(n, n, [&](double x, double y) { return trigSum(rng, 6, x, y, coeff); });
                 },
                 0.05, Side::bothNodal, 64});
    c.push_back({"sphere sin theta cos phi", sphere([](double t, double p) { return std::sin(t) * std::cos(p); }), 0.2,
                 Side::bothNodal, 32});
    c.push_back({"sphere cos theta (caps)", sphere([](double t, double) { return std::cos(t); }), -0.5, Side::above,
                 16});
    c.push_back({"sphere sin^2 cos 2phi",
                 sphere([](double t, double p) { return std::sin(t) * std::sin(t) * std::cos(2 * p); }), 0.3,
                 Side::above, 32});
    c.push_back({"sphere zonal degree 3",
                 sphere([](double t, double) {
                     const double z = std::cos(t);
                     return 5 * z * z * z - 3 * z;
                 }),
                 0.5, Side::bothNodal, 32});
    c.push_back({"sphere sin^3 cos 3phi (open poles)",
                 sphere([](double t, double p) { return std::pow(std::sin(t), 3) * std::cos(3 * p); }, PolePolicy::open),
                 0.1, Side::bothNodal, 32});
    c.push_back({"sphere xyz", sphere([](double t, double p) {
                     return std::sin(t) * std::cos(p) * std::sin(t) * std::sin(p) * std::cos(t);
                 }),
                 0.0, Side::bothNodal, 0});
    c.push_back({"disk xy", disk([](double x, double y) { return x * y; }), 0.0, Side::bothNodal, 0});
    c.push_back({"box three lines", box([](double x, double y) { return (x - y) * (x + y) * (x - 0.5); }), 0.02,
                 Side::above, 64});
    c.push_back({"disk cos 3x cos 3y", disk([](double x, double y) { return std::cos(3 * x) * std::cos(3 * y); }),
                 0.2, Side::above, 64});
    c.push_back({"disk gaussian bumps",
                 disk([](double x, double y) {
                     return std::exp(-20 * ((x - 0.4) * (x - 0.4) + y * y)) +
                            std::exp(-20 * ((x + 0.4) * (x + 0.4) + (y - 0.3) * (y - 0.3)));
                 }),
                 0.5, Side::above, 32});
    c.push_back({"annulus x",
                 [](std::size_t n) {
                     return planar(
                         n, -1.0, 1.0,
                         [](double x, double y) {
                             const double r2 = x * x + y * y;
                             return r2 < 1.0 && r2 > 0.16;
                         },
                         [](double x, double) { return x; });
                 },
                 0.1, Side::below, 32});
    c.push_back({"box sin 5x + y", box([](double x, double y) { return std::sin(5 * x) + y; }), 0.5, Side::above, 64});
    return c;
}

}  // namespace

std::uint64_t Rng::next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int Rng::integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

OracleReport bfsComponents(const ScalarField2D& f, double a, Side side, Connectivity conn, double relTolerance) {
    const std::size_t n = f.values.size();
    std::vector<int> cls(n, 0);
    const auto* planar = std::get_if<PlanarMasked>(&f.topology);
    const std::size_t C = gridCols(f.topology);
    auto active = [&](std::size_t k) {
        return !planar || planar->mask.empty() || planar->mask[k] != 0 || k >= gridRows(f.topology) * C;
    };
    double vmax = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (active(k)) vmax = std::max(vmax, std::abs(f.values[k]));
    const double tol = relTolerance * vmax;
    for (std::size_t k = 0; k < n; ++k) {
        if (!active(k)) continue;
        const double d = f.values[k] - a;
        if (d > 0.0 && d >= tol) cls[k] = 1;
        if (d < 0.0 && -d >= tol) cls[k] = -1;
    }
    OracleReport r;
    if (side == Side::above || side == Side::bothNodal) {
        const auto s = runBfs(f, cls, 1, conn);
        r.sizes.insert(r.sizes.end(), s.begin(), s.end());
    }
    if (side == Side::below || side == Side::bothNodal) {
        const auto s = runBfs(f, cls, -1, conn);
        r.sizes.insert(r.sizes.end(), s.begin(), s.end());
    }
    r.count = r.sizes.size();
    return r;
}

double besselPrimeSeries(int m, double x) {
    double sum = 0.0, term = std::pow(0.5, m);
    for (int i = 1; i <= m; ++i) term /= i;
    for (int k = 0; k < 80; ++k) {
        const int p = 2 * k + m;
        if (p > 0) sum += term * p * std::pow(x, p - 1);
        term *= -0.25 / ((k + 1.0) * (k + 1.0 + m));
    }
    return sum;
}

double besselPrimeZero(int m, double lo, double hi) {
    if (besselPrimeSeries(m, lo) * besselPrimeSeries(m, hi) > 0.0) throw std::runtime_error("no sign change");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (besselPrimeSeries(m, lo) * besselPrimeSeries(m, mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

const std::vector<CorpusEntry>& fieldCorpus() {
    static const std::vector<CorpusEntry> corpus = makeCorpus();
    return corpus;
}

}  // namespace speclab::testing
