#pragma once

#include "report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace speclab::cli {

struct ParamSpec {
    std::string key;
    std::string defaultValue;  // empty: optional without default
    std::string help;
};

class Context {
public:
    Context(RunConfig cfg, Report& report) : cfg_(std::move(cfg)), report_(report) {}

    const RunConfig& config() const { return cfg_; }
    Report& report() { return report_; }

    const std::string& str(const std::string& key) const;
    bool has(const std::string& key) const { return !str(key).empty(); }
    bool isAuto(const std::string& key) const { return str(key) == "auto"; }
    int integer(const std::string& key) const;
    std::size_t size(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<std::size_t> sizes(const std::string& key) const;

    // Writes <output>/<name> and lists it in the report.
    void write(const std::string& name, const std::string& content);
    std::filesystem::path path(const std::string& name) const { return cfg_.outputDir / name; }

private:
    RunConfig cfg_;
    Report& report_;
};

struct ExperimentSpec {
    std::string id;
    std::vector<std::string> command;  // subcommand path, e.g. {"torus", "example2"}
    std::string help;
    std::vector<ParamSpec> params;
    std::function<void(Context&)> run;
};

const std::vector<ExperimentSpec>& experiments();
const ExperimentSpec* findExperiment(const std::string& id);

// Runs the experiment, writes report.json and returns the exit status:
// 0 all assertions pass, 1 an assertion failed or the computation broke
// down, 2 usage error (no report is written then).
int runExperiment(const ExperimentSpec& spec, const RunConfig& cfg);

}  // namespace speclab::cli
