#include "speclab/field_io.hpp"

#include "speclab/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace speclab {
namespace {

using nlohmann::json;

json topologyJson(const DomainTopology& t) {
    json j;
    if (const auto* g = std::get_if<TorusPeriodic>(&t)) {
        j = {{"kind", "torus"}, {"nx", g->nx}, {"ny", g->ny}};
    } else if (const auto* g = std::get_if<SphereLatLong>(&t)) {
        j = {{"kind", "sphere"},
             {"ntheta", g->ntheta},
             {"nphi", g->nphi},
             {"poles", g->hasCaps() ? "cap" : "open"},
             {"theta0", formatDouble(g->theta0)},
             {"theta1", formatDouble(g->theta1)}};
    } else {
        const auto& p = std::get<PlanarMasked>(t);
        // Mask as run lengths of alternating 0/1 starting with 1s.
        json runs = json::array();
        if (!p.mask.empty()) {
            std::uint8_t cur = 1;
            std::size_t len = 0;
            for (std::uint8_t m : p.mask) {
                const std::uint8_t b = m ? 1 : 0;
                if (b == cur) {
                    ++len;
                } else {
                    runs.push_back(len);
                    cur = b;
                    len = 1;
                }
            }
            runs.push_back(len);
        }
        j = {{"kind", "planar"},
             {"nx", p.nx},
             {"ny", p.ny},
             {"x0", formatDouble(p.x0)},
             {"x1", formatDouble(p.x1)},
             {"y0", formatDouble(p.y0)},
             {"y1", formatDouble(p.y1)},
             {"mask_runs", runs}};
    }
    return j;
}

double parseDouble(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error("field: cannot parse number '" + std::string(s) + "'");
    return v;
}

DomainTopology topologyFromJson(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "torus") return TorusPeriodic{j.at("nx"), j.at("ny")};
    if (kind == "sphere") {
        SphereLatLong s;
        s.ntheta = j.at("ntheta");
        s.nphi = j.at("nphi");
        s.poles = j.at("poles") == "cap" ? PolePolicy::cap : PolePolicy::open;
        s.theta0 = parseDouble(j.at("theta0").get<std::string>());
        s.theta1 = parseDouble(j.at("theta1").get<std::string>());
        return s;
    }
    if (kind == "planar") {
        PlanarMasked p;
        p.nx = j.at("nx");
        p.ny = j.at("ny");
        p.x0 = parseDouble(j.at("x0").get<std::string>());
        p.x1 = parseDouble(j.at("x1").get<std::string>());
        p.y0 = parseDouble(j.at("y0").get<std::string>());
        p.y1 = parseDouble(j.at("y1").get<std::string>());
        const auto& runs = j.at("mask_runs");
        if (!runs.empty()) {
            p.mask.reserve(p.nx * p.ny);
            std::uint8_t cur = 1;
            for (const auto& r : runs) {
                p.mask.insert(p.mask.end(), r.get<std::size_t>(), cur);
                cur ^= 1;
            }
            if (p.mask.size() != p.nx * p.ny) throw Error("field: mask run lengths do not cover the grid");
        }
        return p;
    }
    throw Error("field: unknown topology '" + kind + "'");
}

}  // namespace

std::string formatDouble(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string fieldHeaderJson(const ScalarField2D& f, const std::string& dataFile) {
    json j = {{"format", "speclab-field"},
              {"version", 1},
              {"label", f.label},
              {"topology", topologyJson(f.topology)},
              {"rows", f.rows()},
              {"cols", f.cols()},
              {"extra_cells", extraCells(f.topology)},
              {"data", dataFile}};
    return j.dump(2) + "\n";
}

std::string fieldCsv(const ScalarField2D& f) {
    std::string out;
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    out.reserve(f.values.size() * 24);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (j) out += ',';
            out += formatDouble(f.values[i * cols + j]);
        }
        out += '\n';
    }
    const std::size_t extra = extraCells(f.topology);
    for (std::size_t k = 0; k < extra; ++k) {
        if (k) out += ',';
        out += formatDouble(f.values[rows * cols + k]);
    }
    if (extra) out += '\n';
    return out;
}

void writeField(const ScalarField2D& f, const std::filesystem::path& headerPath) {
    std::filesystem::path dataPath = headerPath;
    dataPath.replace_extension(".csv");
    {
        std::ofstream h(headerPath, std::ios::binary);
        if (!h) throw Error("cannot write " + headerPath.string());
        h << fieldHeaderJson(f, dataPath.filename().string());
    }
    std::ofstream d(dataPath, std::ios::binary);
    if (!d) throw Error("cannot write " + dataPath.string());
    d << fieldCsv(f);
}

ScalarField2D readField(const std::filesystem::path& headerPath) {
    std::ifstream h(headerPath, std::ios::binary);
    if (!h) throw Error("cannot read " + headerPath.string());
    const json j = json::parse(h);
    if (j.value("format", "") != "speclab-field") throw Error("not a speclab field header");
    ScalarField2D f;
    f.topology = topologyFromJson(j.at("topology"));
    f.label = j.value("label", "");
    const std::filesystem::path dataPath = headerPath.parent_path() / j.at("data").get<std::string>();
    std::ifstream d(dataPath, std::ios::binary);
    if (!d) throw Error("cannot read " + dataPath.string());
    std::stringstream ss;
    ss << d.rdbuf();
    const std::string text = ss.str();
    f.values.reserve(cellCount(f.topology));
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k) {
        if (k == text.size() || text[k] == ',' || text[k] == '\n') {
            if (k > start) f.values.push_back(parseDouble(std::string_view(text).substr(start, k - start)));
            start = k + 1;
        }
    }
    if (f.values.size() != cellCount(f.topology))
        throw Error("field: expected " + std::to_string(cellCount(f.topology)) + " values, found " +
                    std::to_string(f.values.size()));
    requireFinite(f);
    return f;
}

}  // namespace speclab
