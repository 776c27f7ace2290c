#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pathlab {

struct CaseRecord {
    std::string id;
    std::string config;
    std::string verdict;  // "pass" | "fail" | "info"
    std::optional<double> metric;
    std::string detail;
    double wall_ms = 0.0;
};

/// One suite run: ordered case records plus an environment stamp. The summary
/// (pass/fail counts) is derived from the records on export.
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string version;
    std::vector<CaseRecord> records;

    void add(CaseRecord r) { records.push_back(std::move(r)); }
    int passes() const;
    int failures() const;
    bool all_passed() const { return failures() == 0; }

    /// Canonical content (excludes wall-time fields); equal across
    /// deterministic reruns.
    std::string canonical() const;
};

std::string export_report_json(const SuiteReport& r);
SuiteReport import_report_json(const std::string& bytes);
std::string export_report_csv(const SuiteReport& r);       // RFC-4180
std::string export_report_markdown(const SuiteReport& r);

std::string export_report(const SuiteReport& r, const std::string& fmt);

}  // namespace pathlab
