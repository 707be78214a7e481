#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nullforge/analysis.hpp"
#include "nullforge/harness.hpp"
#include "nullforge/operators.hpp"

namespace nullforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// --- run directory layout -------------------------------------------------
// <out>/manifest.json    tool version, config snapshot, roster, baseline,
//                        timing, status counts
// <out>/mutants.jsonl    one mutant per line, stable field order
// <out>/outcomes.jsonl   one outcome per line
// <out>/analysis.json    recomputable via `nullforge analyze`
// <out>/reports/         rendered reports (json/csv/md)

Json mutant_to_json(const Mutant& m);
Mutant mutant_from_json(const Json& j);

Json outcome_to_json(const MutantOutcome& o);
MutantOutcome outcome_from_json(const Json& j);

void write_jsonl(const std::filesystem::path& file, const std::vector<Json>& lines);
std::vector<Json> read_jsonl(const std::filesystem::path& file);

struct RunManifest {
  std::string tool_version = kToolVersion;
  Json config;
  std::vector<std::string> operator_roster;
  std::vector<std::string> baseline_tests;
  double baseline_wall_seconds = 0.0;
  std::string started_at; // timestamps live only here, never in analysis output
  std::string finished_at;
  StatusCounts counts;
  std::vector<std::string> suppressed_ids; // resolved from the suppression list
  std::vector<std::string> warnings;
};

void write_manifest(const std::filesystem::path& run_dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& run_dir);

/// Full analysis document; deterministic (no timestamps, fixed field order).
Json analysis_to_json(const ProjectSummary& summary, const SubsumptionGraph& graph,
                      const std::set<std::string>& subsuming,
                      const SubsumptionDistribution& distribution,
                      size_t kill_matrix_mutants, size_t unresolved_killed);

/// Recomputes analysis.json from a stored run directory.
Json analyze_run_dir(const std::filesystem::path& run_dir);

/// Renders reports into <run_dir>/reports. `format` is one of
/// "json", "csv", "md". The markdown summary lists killing tests per killed
/// mutant when `include_killing_tests` is set. Returns the files written.
std::vector<std::filesystem::path> emit_report(const std::filesystem::path& run_dir,
                                               const std::string& format,
                                               bool include_killing_tests = false);

} // namespace nullforge
