#pragma once
// Run artifacts: one JSON record per run, CSV tables for the sweeps inside
// each check and a text summary rendered from the JSON record alone.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hhed/config.hpp"
#include "hhed/verify.hpp"

namespace hhed {

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const SweepResult& sweep);
nlohmann::json model_json(const RunConfig& config);

/// {"model": ..., "checks": [...], "overall": verdict, "exit_code": n}
nlohmann::json run_record(const RunConfig& config, const std::vector<VerificationReport>& reports, int exit_code);

/// Human-readable summary; depends only on the record.
std::string render_summary(const nlohmann::json& record);

/// Columns: parameter,dimension,E0,E1,gap,degeneracy,overlap,spin,<observables...>
std::string sweep_csv(const SweepResult& sweep);

/// Writes report.json, summary.txt and <check>_<trace>.csv as selected by config.formats.
/// Returns the paths written.
std::vector<std::filesystem::path> write_artifacts(const RunConfig& config, const nlohmann::json& record,
                                                   const std::vector<VerificationReport>& reports,
                                                   const std::filesystem::path& directory);

/// %.17g
std::string format_number(double v);

}  // namespace hhed
