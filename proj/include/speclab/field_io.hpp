#pragma once

#include "speclab/fields.hpp"

#include <filesystem>
#include <string>

namespace speclab {

// A field is stored as a JSON header (topology, dims, label, data file) plus
// a CSV body of row-major values with 17 significant digits. Sphere caps are
// written as a final two-value line. Reading back is bit-identical.
std::string fieldHeaderJson(const ScalarField2D& f, const std::string& dataFile);
std::string fieldCsv(const ScalarField2D& f);
std::string formatDouble(double v);

// Writes <path> (header) and <path with .csv extension> (body).
void writeField(const ScalarField2D& f, const std::filesystem::path& headerPath);
ScalarField2D readField(const std::filesystem::path& headerPath);

}  // namespace speclab
