#include "report.hpp"

#include "speclab/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace speclab::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string general(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::map<std::string, std::string> readConfigFile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineNo) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty()) throw UsageError(path.string() + ":" + std::to_string(lineNo) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

Report::Report(const RunConfig& cfg) {
    doc_["schema"] = kReportSchema;
    doc_["library"] = {{"name", "speclab"}, {"version", kVersion}};
    Json params = Json::object();
    for (const auto& [k, v] : cfg.params) params[k] = v;
    doc_["config"] = {{"experiment", cfg.experiment},
                      {"parameters", params},
                      {"seed", cfg.seed},
                      {"output", cfg.outputDir.generic_string()}};
    doc_["results"] = Json::object();
    doc_["assertions"] = Json::array();
    doc_["artifacts"] = Json::array();
}

void Report::check(const std::string& name, double value, const std::string& relation, double bound, bool pass) {
    doc_["assertions"].push_back(
        {{"name", name}, {"value", number(value)}, {"relation", relation}, {"bound", number(bound)}, {"pass", pass}});
}

void Report::checkEqual(const std::string& name, double value, double expected) {
    check(name, value, "==", expected, value == expected);
}

void Report::checkAtMost(const std::string& name, double value, double bound) {
    check(name, value, "<=", bound, value <= bound);
}

void Report::checkAtLeast(const std::string& name, double value, double bound) {
    check(name, value, ">=", bound, value >= bound);
}

void Report::checkTrue(const std::string& name, bool value) { check(name, value ? 1.0 : 0.0, "==", 1.0, value); }

void Report::error(const std::string& message) { doc_["error"] = message; }

bool Report::pass() const {
    if (doc_.contains("error")) return false;
    return std::all_of(doc_["assertions"].begin(), doc_["assertions"].end(),
                       [](const Json& a) { return a["pass"].get<bool>(); });
}

std::string Report::dump() const {
    Json d = doc_;
    d["pass"] = pass();
    return d.dump(2) + "\n";
}

std::string renderLinePlot(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                           const std::string& xLabel, const std::string& yLabel) {
    const double w = 640.0, h = 360.0, m = 50.0;
    double x0 = x.front(), x1 = x.back();
    double y0 = *std::min_element(y.begin(), y.end()), y1 = *std::max_element(y.begin(), y.end());
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    auto X = [&](double v) { return m + (v - x0) / (x1 - x0) * w; };
    auto Y = [&](double v) { return m + (y1 - v) / (y1 - y0) * h; };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(w + 2 * m) + "\" height=\"" +
                    fixed(h + 2 * m + 10) + "\">\n";
    s += "<rect x=\"" + fixed(m) + "\" y=\"" + fixed(m) + "\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) +
         "\" fill=\"none\" stroke=\"#888\"/>\n";
    s += "<text x=\"" + fixed(m) + "\" y=\"24\" font-family=\"monospace\" font-size=\"12\">" + title + "</text>\n";
    s += "<text x=\"" + fixed(m) + "\" y=\"" + fixed(h + 2 * m) + "\" font-family=\"monospace\" font-size=\"11\">" +
         xLabel + " in [" + general(x0) + ", " + general(x1) + "], " + yLabel + " in [" + general(y0) + ", " +
         general(y1) + "]</text>\n";
    std::string d;
    for (std::size_t i = 0; i < x.size(); ++i) d += (i ? " L" : "M") + fixed(X(x[i])) + " " + fixed(Y(y[i]));
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\"/>\n</svg>\n";
    return s;
}

}  // namespace speclab::cli
