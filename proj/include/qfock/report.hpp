// report.hpp
// Experiment orchestration and structured report emission: deterministic
// rows, invariant verdicts, config hashing, CSV/JSON output with a run
// manifest sidecar.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfock/config.hpp"

namespace qfock {

inline constexpr const char* artifact_version = "1.0.0";

// One checked property: pass iff value <= tolerance.
struct Invariant {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

using Cell = std::variant<long long, double, std::string>;

struct ReportRecord {
    std::string experiment;
    RunConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<Invariant> invariants;
    std::string config_hash;
    std::string version = artifact_version;
    long long duration_ms = 0;

    bool all_pass() const;
};

// The recognized experiment names, in verify-all execution order
// (verify-all itself is last).
const std::vector<std::string>& experiment_names();

// Runs one experiment; unknown names raise validation_error. Reports are
// deterministic functions of the config.
ReportRecord run_experiment(const std::string& name, const RunConfig& cfg);

enum class ReportFormat { csv, json };

// csv: report.csv + invariants.csv; json: report.json. Both formats also
// write manifest.json (config hash, artifact version, timestamp, duration);
// the timestamp lives only in the manifest so report bytes stay
// reproducible.
void emit(const ReportRecord& rec, const std::string& out_dir, ReportFormat fmt);

// Rebuilds a ReportRecord from report.json text (round-trip support).
ReportRecord parse_report_json(const std::string& text);

// Shortest round-trip decimal form via std::to_chars.
std::string format_double(double x);

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace qfock
