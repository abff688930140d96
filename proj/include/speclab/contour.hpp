#pragma once

#include "speclab/fields.hpp"

#include <array>
#include <string>
#include <vector>

namespace speclab {

// A level curve in parameter coordinates (first axis, second axis). Points
// on wrapped axes are reduced into the fundamental period, so a curve that
// crosses a seam jumps by one period between consecutive points.
// A closed line repeats its first point at the end.
struct ContourLine {
    std::vector<std::array<double, 2>> points;
    bool closed = false;
};

struct ContourSet {
    double level = 0.0;
    double minValue = 0.0, maxValue = 0.0;
    bool outOfRange = false;  // level outside [minValue, maxValue]
    std::vector<ContourLine> lines;
    std::size_t closedCount() const;
    std::size_t vertexCount() const;
};

// Marching squares on the grid nodes. Cells whose value exceeds the level
// are inside; saddles are resolved by the mean of the four corners. Crossing
// points are keyed by grid edge, so curves are stitched across periodic
// seams exactly. Masked planar nodes and sphere caps are skipped.
ContourSet extractContours(const ScalarField2D& f, double level);

// SVG of the contour set with the parameter box as frame. Output depends
// only on the field values and the arguments.
std::string renderContourSVG(const ScalarField2D& f, double level, const std::string& title = {});
std::string renderContourSVG(const ContourSet& c, const ScalarField2D& f, const std::string& title = {});

}  // namespace speclab
