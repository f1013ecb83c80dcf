#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace gnt {

using Json = nlohmann::ordered_json;

// One checked claim. Informational records are reported but never fail a run.
struct CheckRecord {
    std::string name;
    std::string anchor;  // the claim being checked, written out
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double tolerance = 0;
    bool pass = true;
    bool informational = false;

    static CheckRecord make(std::string name, std::string anchor, double lhs, double rhs, double residual,
                            double tolerance, bool informational = false);
};

class SuiteReport {
public:
    explicit SuiteReport(std::string command) : command_(std::move(command)) {}

    void add(CheckRecord record) { records_.push_back(std::move(record)); }
    void set_config(Json config) { config_ = std::move(config); }
    Json& results() { return results_; }
    const Json& results() const { return results_; }
    void set_runtime(double seconds) { runtime_seconds_ = seconds; }
    // Run-dependent values (timings) kept apart from the reproducible part.
    Json& metadata() { return metadata_; }
    void set_csv(std::string csv) { csv_ = std::move(csv); }

    const std::string& command() const { return command_; }
    const std::vector<CheckRecord>& records() const { return records_; }
    const std::string& csv() const { return csv_; }

    // True when every non-informational record passes.
    bool passed() const;

    // Keys in fixed order. Everything except "metadata" is a function of the
    // configuration alone.
    Json to_json() const;

    // name,anchor,lhs,rhs,residual,tolerance,pass,informational
    std::string records_csv() const;

private:
    std::string command_;
    std::vector<CheckRecord> records_;
    Json config_ = Json::object();
    Json results_ = Json::object();
    double runtime_seconds_ = 0;
    Json metadata_ = Json::object();
    std::string csv_;
};

std::string version();

// Shortest round-trip decimal form, used for every number written to CSV.
std::string format_number(double v);

}  // namespace gnt
