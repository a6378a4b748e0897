#pragma once

// Output envelope and serialization shared by the CLI: CSV with leading
// `# key: value` envelope comments, or a JSON document.  Numbers are written
// with 17 significant digits so doubles round-trip exactly.

#include "optimizer.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>

namespace qsd {

struct OutputEnvelope {
    std::string schema_version = "1";
    std::string command;      // echoed invocation
    std::string generated_at; // ISO-8601 UTC
    SweepTable records;
};

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string iso8601_utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string cell_to_csv(const Cell& c) {
    if (std::holds_alternative<double>(c))
        return format_g17(std::get<double>(c));
    if (std::holds_alternative<bool>(c))
        return std::get<bool>(c) ? "true" : "false";
    return std::get<std::string>(c);
}

inline std::string to_csv(const OutputEnvelope& env) {
    std::string out;
    out += "# schema_version: " + env.schema_version + "\n";
    out += "# command: " + env.command + "\n";
    out += "# generated_at: " + env.generated_at + "\n";
    for (size_t i = 0; i < env.records.columns.size(); ++i) {
        if (i)
            out += ',';
        out += env.records.columns[i];
    }
    out += '\n';
    for (const auto& row : env.records.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += cell_to_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (std::isnan(v))
            return nullptr;
        return v;
    }
    if (std::holds_alternative<bool>(c))
        return std::get<bool>(c);
    return std::get<std::string>(c);
}

inline std::string to_json(const OutputEnvelope& env) {
    nlohmann::json j;
    j["schema_version"] = env.schema_version;
    j["command"] = env.command;
    j["generated_at"] = env.generated_at;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& row : env.records.rows) {
        nlohmann::json rec;
        for (size_t i = 0; i < row.size() && i < env.records.columns.size();
             ++i)
            rec[env.records.columns[i]] = cell_to_json(row[i]);
        records.push_back(rec);
    }
    j["records"] = records;
    return j.dump(2) + "\n";
}

} // namespace qsd
