#include "experiments.hpp"
#include "report.hpp"

#include "speclab/version.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <memory>

using namespace speclab::cli;

namespace {

struct Invocation {
    const ExperimentSpec* spec = nullptr;
    std::map<std::string, std::string> flags;
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
};

void addCommon(CLI::App* app, Invocation& inv) {
    app->add_option("--config", inv.config, "flat key=value parameter file; flags override it");
    app->add_option("--out", inv.out, "output directory (default speclab-out/<experiment>)");
    app->add_option("--seed", inv.seed, "trial seed offset")->default_val(0);
}

CLI::App* subcommandPath(CLI::App& root, const std::vector<std::string>& path) {
    CLI::App* cur = &root;
    for (const auto& name : path) {
        CLI::App* next = nullptr;
        for (CLI::App* c : cur->get_subcommands([](CLI::App*) { return true; }))
            if (c->get_name() == name) next = c;
        if (!next) {
            next = cur->add_subcommand(name, "experiments under '" + name + "'");
            next->require_subcommand(0, 1);
        }
        cur = next;
    }
    return cur;
}

// `run <id> --key value ...`: the remaining arguments are experiment flags.
std::map<std::string, std::string> parseExtras(const std::vector<std::string>& extras) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& a = extras[i];
        if (a.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + a + "'");
        const auto eq = a.find('=');
        if (eq != std::string::npos) {
            out[a.substr(2, eq - 2)] = a.substr(eq + 1);
        } else {
            if (i + 1 >= extras.size()) throw UsageError("flag '" + a + "' needs a value");
            out[a.substr(2)] = extras[++i];
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"speclab: level-set and nodal-domain experiments for Laplace eigenfunctions"};
    app.set_version_flag("--version", std::string(speclab::kVersion));
    app.require_subcommand(1);
    app.footer("Exit status: 0 all assertions pass, 1 an assertion failed, 2 usage or configuration error.\n"
               "SPECLAB_THREADS caps the worker count; SPECLAB_SIMD=scalar disables the AVX2 kernels.");

    Invocation inv;
    std::vector<std::unique_ptr<std::map<std::string, std::string>>> storage;
    for (const auto& spec : experiments()) {
        if (spec.command.empty()) continue;
        CLI::App* cmd = subcommandPath(app, spec.command);
        cmd->description(spec.help);
        storage.push_back(std::make_unique<std::map<std::string, std::string>>());
        auto* values = storage.back().get();
        for (const auto& p : spec.params) {
            auto* opt = cmd->add_option("--" + p.key, (*values)[p.key], p.help);
            if (!p.defaultValue.empty()) opt->default_str(p.defaultValue);
        }
        addCommon(cmd, inv);
        const ExperimentSpec* sp = &spec;
        cmd->final_callback([&inv, sp, values, cmd]() {
            inv.spec = sp;
            for (const auto& p : sp->params)
                if (cmd->count("--" + p.key) > 0) inv.flags[p.key] = (*values)[p.key];
        });
    }

    std::string runId;
    CLI::App* run = app.add_subcommand("run", "run an experiment by id; experiment flags follow the id");
    std::string ids;
    for (const auto& spec : experiments()) ids += (ids.empty() ? "" : ", ") + spec.id;
    run->add_option("id", runId, "experiment id: " + ids)->required();
    run->allow_extras();
    addCommon(run, inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            inv.spec = findExperiment(runId);
            if (!inv.spec) throw UsageError("unknown experiment id '" + runId + "' (known: " + ids + ")");
            inv.flags = parseExtras(run->remaining());
        }
        if (!inv.spec) throw UsageError("no experiment selected");
        RunConfig cfg;
        if (!inv.config.empty()) cfg.params = readConfigFile(inv.config);
        for (const auto& [k, v] : inv.flags) cfg.params[k] = v;
        cfg.outputDir = inv.out.empty() ? std::filesystem::path("speclab-out") / inv.spec->id : std::filesystem::path(inv.out);
        cfg.seed = inv.seed;
        const int status = runExperiment(*inv.spec, cfg);
        std::cerr << inv.spec->id << ": " << (status == 0 ? "pass" : "FAIL") << " ("
                  << (cfg.outputDir / "report.json").string() << ")\n";
        return status;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
