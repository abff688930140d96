#include "doctest.h"

#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace speclab::cli;

TEST_CASE("config files") {
    const auto path = std::filesystem::temp_directory_path() / "speclab_cli_config.txt";
    {
        std::ofstream out(path);
        out << "# comment\n\nn = 7\n--a=0.01\nside=below   # trailing\n";
    }
    const auto m = readConfigFile(path);
    CHECK(m.size() == 3);
    CHECK(m.at("n") == "7");
    CHECK(m.at("a") == "0.01");
    CHECK(m.at("side") == "below");
    {
        std::ofstream out(path);
        out << "no equals sign\n";
    }
    CHECK_THROWS_AS(readConfigFile(path), UsageError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(readConfigFile(path), UsageError);
}

TEST_CASE("report assertions") {
    RunConfig cfg;
    cfg.experiment = "demo";
    cfg.params["n"] = "3";
    Report r(cfg);
    r.checkEqual("count", 5, 5);
    r.checkAtMost("residual", 1e-9, 1e-8);
    CHECK(r.pass());
    r.checkAtLeast("order", 3.0, 3.5);
    CHECK_FALSE(r.pass());
    const Json doc = Json::parse(r.dump());
    CHECK(doc["assertions"].size() == 3);
    CHECK(doc["assertions"][2]["pass"] == false);
    CHECK(doc["config"]["experiment"] == "demo");
    CHECK(number(std::nan("")).is_null());
}
