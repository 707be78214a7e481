#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullforge/junit.hpp"
#include "nullforge/operators.hpp"

namespace nullforge {

struct RunConfig {
  std::filesystem::path project_root;
  std::string build_command; // run via `sh -c` inside the workspace
  std::string report_glob = "**/build/reports/*.xml"; // workspace-relative
  double timeout_factor = 10.0; // multiplier over baseline wall time
  double timeout_floor_seconds = 30.0;
  int jobs = 1;
  std::vector<std::string> operator_selection = {"all"};
  std::optional<std::filesystem::path> suppress_file;
  std::vector<std::string> include_globs = {"**/*.java"};
  std::vector<std::string> exclude_globs; // extends the default test-dir exclusion
  // A nonzero exit with no reports is stillborn when the build output
  // carries one of these markers (javac prints "error:"); otherwise the
  // mutant counts as killed with an empty kill set.
  std::vector<std::string> compile_error_markers = {"error:"};
};

struct Baseline {
  std::vector<std::string> tests; // passing-test inventory, sorted
  double wall_seconds = 0.0;
};

enum class MutantStatus { Killed, Survived, Stillborn, Timeout, Stale };

std::string to_string(MutantStatus status);
MutantStatus mutant_status_from_string(const std::string& s);

struct MutantOutcome {
  std::string mutant_id;
  MutantStatus status = MutantStatus::Survived;
  std::vector<std::string> killing_tests; // sorted, unique
  double wall_seconds = 0.0;
  // False when reports were missing or unparseable; such killed mutants stay
  // in coverage but are excluded from subsumption.
  bool kill_set_resolved = true;
};

struct BaselineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds the unmutated project in a private workspace copy, verifies every
/// test passes and captures the inventory and wall time. Throws
/// BaselineError on build failure, failing tests or an empty report glob.
Baseline run_baseline(const RunConfig& config);

/// Runs one mutant in the given workspace (a full project copy owned by the
/// caller): patch, build, classify, restore. The workspace file is restored
/// regardless of the outcome.
MutantOutcome execute_mutant(const RunConfig& config, const Baseline& baseline,
                             const Mutant& mutant, const std::filesystem::path& workspace,
                             std::vector<std::string>* warnings = nullptr);

/// Full execution: spins up `config.jobs` workers with private workspace
/// copies and drains the mutant queue. Outcomes are returned in mutant
/// order; aggregation order never affects results.
std::vector<MutantOutcome> execute_all(const RunConfig& config, const Baseline& baseline,
                                       const std::vector<Mutant>& mutants,
                                       const std::filesystem::path& scratch_dir,
                                       std::vector<std::string>* warnings = nullptr,
                                       const std::function<void(const Mutant&, const MutantOutcome&)>&
                                           on_outcome = {});

/// Copies a project tree, skipping VCS metadata.
void copy_project_tree(const std::filesystem::path& from, const std::filesystem::path& to);

/// Workspace-relative paths of report files matching the glob.
std::vector<std::filesystem::path> find_report_files(const std::filesystem::path& workspace,
                                                     const std::string& glob);

} // namespace nullforge
