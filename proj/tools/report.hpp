#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclab::cli {

using Json = nlohmann::ordered_json;

// Bad flags, unknown ids, unreadable inputs: exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string experiment;
    std::map<std::string, std::string> params;  // every parameter, defaults filled in
    std::filesystem::path outputDir;
    std::uint64_t seed = 0;
};

// Flat key=value lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> readConfigFile(const std::filesystem::path& path);

class Report {
public:
    explicit Report(const RunConfig& cfg);

    Json& results() { return doc_["results"]; }
    void check(const std::string& name, double value, const std::string& relation, double bound, bool pass);
    void checkEqual(const std::string& name, double value, double expected);
    void checkAtMost(const std::string& name, double value, double bound);
    void checkAtLeast(const std::string& name, double value, double bound);
    void checkTrue(const std::string& name, bool value);
    void artifact(const std::string& file) { doc_["artifacts"].push_back(file); }
    void error(const std::string& message);
    bool pass() const;
    std::string dump() const;

private:
    Json doc_;
};

// Floats as JSON numbers; non-finite values become null.
Json number(double v);
Json numbers(const std::vector<double>& v);

// Minimal SVG line plot of y against x.
std::string renderLinePlot(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                           const std::string& xLabel, const std::string& yLabel);

}  // namespace speclab::cli
