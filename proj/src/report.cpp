#include "gnt/report.hpp"

#include <charconv>
#include <cmath>

namespace gnt {

std::string version() { return GNT_VERSION; }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

CheckRecord CheckRecord::make(std::string name, std::string anchor, double lhs, double rhs, double residual,
                              double tolerance, bool informational) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance;  // false for NaN
    r.informational = informational;
    return r;
}

bool SuiteReport::passed() const {
    for (const auto& r : records_)
        if (!r.informational && !r.pass) return false;
    return true;
}

namespace {

// JSON has no NaN or infinity; emit them as strings.
Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

}  // namespace

Json SuiteReport::to_json() const {
    std::size_t passed_count = 0, failed = 0, informational = 0;
    Json checks = Json::array();
    for (const auto& r : records_) {
        if (r.informational)
            ++informational;
        else if (r.pass)
            ++passed_count;
        else
            ++failed;
        Json c;
        c["name"] = r.name;
        c["anchor"] = r.anchor;
        c["lhs"] = number(r.lhs);
        c["rhs"] = number(r.rhs);
        c["residual"] = number(r.residual);
        c["tolerance"] = number(r.tolerance);
        c["pass"] = r.pass;
        c["informational"] = r.informational;
        checks.push_back(std::move(c));
    }
    Json out;
    out["command"] = command_;
    out["version"] = version();
    out["passed"] = passed();
    out["summary"] = {{"checks", records_.size()},
                      {"passed", passed_count},
                      {"failed", failed},
                      {"informational", informational}};
    out["config"] = config_;
    out["results"] = results_;
    out["checks"] = std::move(checks);
    Json meta = {{"runtime_seconds", runtime_seconds_}};
    for (const auto& [key, value] : metadata_.items()) meta[key] = value;
    out["metadata"] = std::move(meta);
    return out;
}

std::string SuiteReport::records_csv() const {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string out = "name,anchor,lhs,rhs,residual,tolerance,pass,informational\n";
    for (const auto& r : records_) {
        out += quote(r.name) + "," + quote(r.anchor) + "," + format_number(r.lhs) + "," + format_number(r.rhs) + "," +
               format_number(r.residual) + "," + format_number(r.tolerance) + "," + (r.pass ? "true" : "false") + "," +
               (r.informational ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace gnt
