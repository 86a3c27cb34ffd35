#pragma once

#include <string>

#include <json.hpp>

#include "lab/common.hpp"

namespace lab {

constexpr const char* kToolVersion = "lab 1.0.0";

// FNV-1a 64-bit hash, rendered as 16 hex digits; used to stamp reports with
// the configuration they came from.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

// Accumulates per-check results and renders them as JSON and CSV with stable
// field order; byte-identical output for identical configurations.
class ReportSink {
public:
    explicit ReportSink(const nlohmann::ordered_json& config)
        : config_hash_(fnv1a_hex(config.dump())) {}

    void add(const std::string& check, const nlohmann::ordered_json& params,
             const nlohmann::ordered_json& lhs, const nlohmann::ordered_json& rhs, bool pass) {
        nlohmann::ordered_json r;
        r["check"] = check;
        r["params"] = params;
        r["lhs"] = lhs;
        r["rhs"] = rhs;
        r["pass"] = pass;
        reports_.push_back(std::move(r));
        all_pass_ = all_pass_ && pass;
    }

    bool all_pass() const { return all_pass_; }
    size_t size() const { return reports_.size(); }
    const std::string& config_hash() const { return config_hash_; }

    std::string json_string() const {
        if (reports_.empty()) throw InvalidInput("ReportSink: no results to emit");
        nlohmann::ordered_json doc;
        doc["version"] = kToolVersion;
        doc["config_hash"] = config_hash_;
        doc["reports"] = reports_;
        return doc.dump(2) + "\n";
    }

    // Columns: check,params,lhs,rhs,pass.  Structured fields are compact JSON
    // wrapped in CSV quotes.
    std::string csv_string() const {
        if (reports_.empty()) throw InvalidInput("ReportSink: no results to emit");
        std::string out = "check,params,lhs,rhs,pass\n";
        for (const auto& r : reports_) {
            out += csv_field(r.at("check").get<std::string>()) + ",";
            out += csv_field(r.at("params").dump()) + ",";
            out += csv_field(r.at("lhs").dump()) + ",";
            out += csv_field(r.at("rhs").dump()) + ",";
            out += r.at("pass").get<bool>() ? "true" : "false";
            out += "\n";
        }
        return out;
    }

private:
    static std::string csv_field(const std::string& s) {
        bool quote = s.find_first_of(",\"\n") != std::string::npos;
        if (!quote) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        return q + "\"";
    }

    nlohmann::ordered_json::array_t reports_;
    std::string config_hash_;
    bool all_pass_ = true;
};

}  // namespace lab
