#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gnt/gnt.h"
#include "json.hpp"

namespace {

enum Exit { kPass = 0, kFailedChecks = 1, kConfigError = 2, kNumerical = 3, kInternal = 4 };

int exit_code(gnt_status status) {
    switch (status) {
        case GNT_OK:
            return kPass;
        case GNT_NUMERICAL:
            return kNumerical;
        case GNT_INTERNAL:
            return kInternal;
        default:
            return kConfigError;
    }
}

struct Options {
    std::string config;
    std::string reading;
    std::string out;
    std::string csv;
    unsigned long long seed = 0;
    bool has_seed = false;
};

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

int run(const std::string& command, const Options& opt) {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    if (!opt.config.empty()) {
        std::ifstream in(opt.config, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read config '" << opt.config << "'\n";
            return kConfigError;
        }
        try {
            config = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::ordered_json::parse_error& e) {
            std::cerr << "error: malformed config '" << opt.config << "': " << e.what() << "\n";
            return kConfigError;
        }
        if (!config.is_object()) {
            std::cerr << "error: config must be a JSON object\n";
            return kConfigError;
        }
        // Matrix files are named relative to the config file.
        auto it = config.find("matrices_file");
        if (it != config.end() && it->is_string()) {
            const std::filesystem::path p = it->get<std::string>();
            if (p.is_relative()) *it = (std::filesystem::path(opt.config).parent_path() / p).lexically_normal().string();
        }
    }
    if (opt.has_seed) config["seed"] = opt.seed;
    if (!opt.reading.empty()) config["reading"] = opt.reading;

    gnt_report* report = nullptr;
    const gnt_status status = gnt_run(command.c_str(), config.dump().c_str(), &report);
    if (status != GNT_OK) {
        std::cerr << "error: " << gnt_last_error() << "\n";
        return exit_code(status);
    }
    const bool passed = gnt_report_passed(report) != 0;
    const std::string json = gnt_report_json(report);
    const std::string csv = gnt_report_csv(report);
    gnt_report_free(report);

    if (opt.out.empty()) {
        std::cout << json;
    } else if (!write_text(opt.out, json)) {
        std::cerr << "error: cannot write '" << opt.out << "'\n";
        return kInternal;
    }
    if (!opt.csv.empty() && !write_text(opt.csv, csv)) {
        std::cerr << "error: cannot write '" << opt.csv << "'\n";
        return kInternal;
    }
    std::cerr << command << ": " << (passed ? "PASS" : "FAIL") << "\n";
    return passed ? kPass : kFailedChecks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Newton transformations and first variations of sigma_u-curvature functionals"};
    app.set_version_flag("--version", std::string(gnt_version()));
    app.require_subcommand(1);

    Options opt;
    const std::pair<const char*, const char*> commands[] = {
        {"identities", "Randomized algebra identity suite"},
        {"sigma", "sigma_u and T_u of a tuple of matrices"},
        {"functional", "Integral of sigma_u over a catalog immersion"},
        {"variation", "First variation: formula against finite differences"},
        {"minimality", "sigma_u-minimality residuals"},
        {"check-all", "Every acceptance criterion"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)")
            ->each([&](const std::string&) { opt.has_seed = true; });
        sub->add_option("--reading", opt.reading, "Contraction reading to assert")
            ->check(CLI::IsMember({"componentwise", "literal", "both"}));
        sub->add_option("--out", opt.out, "Write the JSON report here instead of stdout");
        sub->add_option("--csv", opt.csv, "Write the CSV companion here");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }
    return run(app.get_subcommands().front()->get_name(), opt);
}
