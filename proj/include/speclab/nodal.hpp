#pragma once

#include "speclab/fields.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace speclab {

enum class Side { above, below, bothNodal };
enum class Connectivity { four, eight };

struct NodalOptions {
    Connectivity connectivity = Connectivity::four;
    // Cells with |v - a| < relTolerance * max|v| belong to neither side.
    double relTolerance = 1e-12;
    // More than this fraction of cells inside the band is an error.
    double maxBandFraction = 0.05;
};

// Axis-aligned box in parameter coordinates: first axis in [lo0, hi0],
// second axis in [lo1, hi1]. A cell belongs when its node lies inside.
struct Subregion {
    double lo0 = 0.0, hi0 = 0.0, lo1 = 0.0, hi1 = 0.0;
};

struct LevelSetReport {
    double threshold = 0.0;
    Side side = Side::above;
    std::size_t componentCount = 0;
    std::vector<std::size_t> componentCells;  // ordered by first cell index
    std::string resolution;
    std::optional<Subregion> subregion;
    std::size_t bandCells = 0;  // cells assigned to neither side
};

// Cell classes: +1 above, -1 below, 0 in band or inactive.
struct Classification {
    std::vector<std::int8_t> cls;
    std::vector<std::uint8_t> active;  // 1 if the cell takes part
    std::size_t bandCells = 0;
    std::size_t activeCells = 0;
};

Classification classifyCells(const ScalarField2D& f, double a, const NodalOptions& opts,
                             const std::optional<Subregion>& sub = std::nullopt);

// Union-find labelling of the cells with cls == sign. Returns per-cell
// labels (-1 for non-members) numbered by first appearance.
struct ComponentLabels {
    std::vector<int> label;
    std::vector<std::size_t> sizes;
};
ComponentLabels labelComponents(const ScalarField2D& f, const Classification& c, std::int8_t sign,
                                Connectivity conn,
                                const std::optional<Subregion>& sub = std::nullopt);

LevelSetReport countLevelComponents(const ScalarField2D& f, double a, Side side,
                                    const NodalOptions& opts = {});

// Components of {f > 0} plus components of {f < 0}.
LevelSetReport countNodalDomains(const ScalarField2D& f, const NodalOptions& opts = {});

// Throws if the subregion contains no cell of the field.
LevelSetReport componentCountInBand(const ScalarField2D& f, double a, Side side,
                                    const Subregion& sub, const NodalOptions& opts = {});

std::string sideName(Side s);
Side parseSide(const std::string& s);

}  // namespace speclab
