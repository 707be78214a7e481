#include "nullforge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "nullforge/glob.hpp"
#include "nullforge/subprocess.hpp"

namespace fs = std::filesystem;

namespace nullforge {

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  out << text;
}

double mutant_timeout(const RunConfig& config, const Baseline& baseline) {
  return std::max(config.timeout_floor_seconds, config.timeout_factor * baseline.wall_seconds);
}

struct ReportScan {
  std::vector<TestResult> results;
  bool any_report = false;
  bool all_parsed = true;
};

ReportScan scan_reports(const fs::path& workspace, const std::string& glob,
                        std::vector<std::string>* warnings) {
  ReportScan scan;
  for (const fs::path& rel : find_report_files(workspace, glob)) {
    scan.any_report = true;
    try {
      auto results = parse_test_report(read_file(workspace / rel));
      scan.results.insert(scan.results.end(), results.begin(), results.end());
    } catch (const JUnitParseError& e) {
      scan.all_parsed = false;
      if (warnings)
        warnings->push_back("report " + rel.string() + ": " + e.what());
    }
  }
  return scan;
}

bool output_has_marker(const std::string& output, const std::vector<std::string>& markers) {
  for (const auto& m : markers)
    if (output.find(m) != std::string::npos)
      return true;
  return false;
}

} // namespace

std::string to_string(MutantStatus status) {
  switch (status) {
  case MutantStatus::Killed: return "killed";
  case MutantStatus::Survived: return "survived";
  case MutantStatus::Stillborn: return "stillborn";
  case MutantStatus::Timeout: return "timeout";
  case MutantStatus::Stale: return "stale";
  }
  return "unknown";
}

MutantStatus mutant_status_from_string(const std::string& s) {
  if (s == "killed")
    return MutantStatus::Killed;
  if (s == "survived")
    return MutantStatus::Survived;
  if (s == "stillborn")
    return MutantStatus::Stillborn;
  if (s == "timeout")
    return MutantStatus::Timeout;
  if (s == "stale")
    return MutantStatus::Stale;
  throw std::invalid_argument("unknown mutant status: " + s);
}

void copy_project_tree(const fs::path& from, const fs::path& to) {
  fs::create_directories(to);
  for (auto it = fs::recursive_directory_iterator(from);
       it != fs::recursive_directory_iterator(); ++it) {
    fs::path rel = fs::relative(it->path(), from);
    if (!rel.empty() && rel.begin()->string() == ".git") {
      if (it->is_directory())
        it.disable_recursion_pending();
      continue;
    }
    if (it->is_directory())
      fs::create_directories(to / rel);
    else if (it->is_regular_file())
      fs::copy_file(it->path(), to / rel, fs::copy_options::overwrite_existing);
  }
}

std::vector<fs::path> find_report_files(const fs::path& workspace, const std::string& glob) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(workspace, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec)
      break;
    if (!it->is_regular_file())
      continue;
    fs::path rel = fs::relative(it->path(), workspace);
    if (glob_match(glob, rel.generic_string()))
      out.push_back(rel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Baseline run_baseline(const RunConfig& config) {
  if (config.build_command.empty())
    throw BaselineError("no build command configured");
  fs::path scratch = fs::temp_directory_path() / ("nullforge-baseline-" +
                                                  std::to_string(::getpid()));
  fs::remove_all(scratch);
  copy_project_tree(config.project_root, scratch);
  CommandResult result;
  try {
    result = run_command(config.build_command, scratch, {}, 0);
  } catch (...) {
    fs::remove_all(scratch);
    throw;
  }
  auto scan = scan_reports(scratch, config.report_glob, nullptr);
  fs::remove_all(scratch);

  if (!scan.any_report)
    throw BaselineError("baseline produced no test reports matching '" + config.report_glob +
                        "' (exit " + std::to_string(result.exit_code) + ")\n" + result.output);
  if (!scan.all_parsed)
    throw BaselineError("baseline test reports are malformed");

  std::vector<std::string> failures;
  Baseline baseline;
  baseline.wall_seconds = result.wall_seconds;
  for (const TestResult& t : scan.results) {
    if (t.verdict == TestVerdict::Pass)
      baseline.tests.push_back(t.id);
    else if (t.verdict != TestVerdict::Skipped)
      failures.push_back(t.id);
  }
  if (!failures.empty()) {
    std::ostringstream msg;
    msg << "baseline is red; failing tests:";
    for (const auto& f : failures)
      msg << "\n  " << f;
    throw BaselineError(msg.str());
  }
  if (result.exit_code != 0)
    throw BaselineError("baseline build failed (exit " + std::to_string(result.exit_code) +
                        ")\n" + result.output);
  std::sort(baseline.tests.begin(), baseline.tests.end());
  return baseline;
}

MutantOutcome execute_mutant(const RunConfig& config, const Baseline& baseline,
                             const Mutant& mutant, const fs::path& workspace,
                             std::vector<std::string>* warnings) {
  MutantOutcome outcome;
  outcome.mutant_id = mutant.id;

  fs::path target = workspace / mutant.file_path;
  std::string original_bytes = read_file(target);
  std::string mutated;
  try {
    mutated = apply_mutant(original_bytes, mutant);
  } catch (const StaleMutantError& e) {
    outcome.status = MutantStatus::Stale;
    outcome.kill_set_resolved = false;
    if (warnings)
      warnings->push_back(e.what());
    return outcome;
  }

  // stale reports from a previous run must never leak into this outcome
  for (const fs::path& rel : find_report_files(workspace, config.report_glob))
    fs::remove(workspace / rel);

  write_file(target, mutated);
  CommandResult result;
  try {
    result = run_command(config.build_command, workspace, {{"MUTANT_ID", mutant.id}},
                         mutant_timeout(config, baseline));
  } catch (...) {
    write_file(target, original_bytes);
    throw;
  }
  write_file(target, original_bytes);
  outcome.wall_seconds = result.wall_seconds;

  if (result.timed_out) {
    outcome.status = MutantStatus::Timeout;
    outcome.kill_set_resolved = true; // an empty kill set: no test resolved the kill
    return outcome;
  }

  auto scan = scan_reports(workspace, config.report_glob, warnings);
  if (!scan.any_report) {
    if (result.exit_code == 0) {
      outcome.status = MutantStatus::Survived;
      if (warnings)
        warnings->push_back("mutant " + mutant.id + ": build succeeded but produced no reports");
      outcome.kill_set_resolved = false;
      return outcome;
    }
    if (output_has_marker(result.output, config.compile_error_markers)) {
      outcome.status = MutantStatus::Stillborn;
      return outcome;
    }
    outcome.status = MutantStatus::Killed;
    outcome.kill_set_resolved = false;
    if (warnings)
      warnings->push_back("mutant " + mutant.id +
                          ": test-failure exit but reports missing; killed with empty kill set");
    return outcome;
  }

  std::set<std::string> kills;
  for (const TestResult& t : scan.results)
    if (t.verdict == TestVerdict::Fail || t.verdict == TestVerdict::Error)
      kills.insert(t.id);
  if (!scan.all_parsed) {
    // degrade to suite level: status by exit code, excluded from subsumption
    outcome.status = result.exit_code == 0 ? MutantStatus::Survived : MutantStatus::Killed;
    outcome.kill_set_resolved = false;
    return outcome;
  }
  if (!kills.empty()) {
    outcome.status = MutantStatus::Killed;
    outcome.killing_tests.assign(kills.begin(), kills.end());
    return outcome;
  }
  outcome.status = MutantStatus::Survived;
  return outcome;
}

std::vector<MutantOutcome> execute_all(const RunConfig& config, const Baseline& baseline,
                                       const std::vector<Mutant>& mutants,
                                       const fs::path& scratch_dir,
                                       std::vector<std::string>* warnings,
                                       const std::function<void(const Mutant&, const MutantOutcome&)>&
                                           on_outcome) {
  std::vector<MutantOutcome> outcomes(mutants.size());
  int jobs = std::max(1, config.jobs);
  jobs = std::min<int>(jobs, std::max<size_t>(mutants.size(), 1));

  std::atomic<size_t> next{0};
  std::mutex sink_mutex;
  std::vector<std::string> all_warnings;
  std::exception_ptr first_error;

  auto worker = [&](int worker_id) {
    fs::path workspace = scratch_dir / ("worker-" + std::to_string(worker_id));
    std::vector<std::string> local_warnings;
    try {
      copy_project_tree(config.project_root, workspace);
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= mutants.size())
          break;
        MutantOutcome outcome =
            execute_mutant(config, baseline, mutants[i], workspace, &local_warnings);
        {
          std::lock_guard<std::mutex> lock(sink_mutex);
          outcomes[i] = outcome;
          if (on_outcome)
            on_outcome(mutants[i], outcome);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      if (!first_error)
        first_error = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> lock(sink_mutex);
      all_warnings.insert(all_warnings.end(), local_warnings.begin(), local_warnings.end());
    }
    std::error_code ec;
    fs::remove_all(workspace, ec);
  };

  std::vector<std::thread> threads;
  for (int w = 0; w < jobs; ++w)
    threads.emplace_back(worker, w);
  for (auto& t : threads)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);
  if (warnings) {
    std::sort(all_warnings.begin(), all_warnings.end());
    warnings->insert(warnings->end(), all_warnings.begin(), all_warnings.end());
  }
  return outcomes;
}

} // namespace nullforge
