#pragma once

#include "speclab/fields.hpp"
#include "speclab/nodal.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace speclab::testing {

// splitmix64; the only randomness used by the property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next();
    double uniform(double lo = 0.0, double hi = 1.0);
    int integer(int lo, int hi);  // inclusive
private:
    std::uint64_t s_;
};

// Component sizes of the cells on `side` of a, found by starting a fresh
// breadth-first search from every unvisited member cell in index order.
// Neighbours are recomputed from the topology at each step; nothing is
// shared with the production labelling.
struct OracleReport {
    std::size_t count = 0;
    std::vector<std::size_t> sizes;  // above components first for both-nodal
};
OracleReport bfsComponents(const ScalarField2D& f, double a, Side side, Connectivity conn = Connectivity::four,
                           double relTolerance = 1e-12);

// Analytic test fields on all three topologies.
struct CorpusEntry {
    std::string name;
    std::function<ScalarField2D(std::size_t n)> build;  // n: base resolution
    double threshold = 0.0;
    Side side = Side::above;
    // Smallest n from which the count is refinement-stable; 0 when the
    // threshold is a critical value (crossing level lines).
    std::size_t nMin = 0;
};
const std::vector<CorpusEntry>& fieldCorpus();

// J'_m by termwise differentiation of the ascending series, and a zero of it
// by bisection on [lo, hi]; written independently of the library.
double besselPrimeSeries(int m, double x);
double besselPrimeZero(int m, double lo, double hi);

}  // namespace speclab::testing
