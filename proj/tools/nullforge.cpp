#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "nullforge/analysis.hpp"
#include "nullforge/harness.hpp"
#include "nullforge/operators.hpp"
#include "nullforge/report.hpp"
#include "nullforge/source_model.hpp"

namespace fs = std::filesystem;
using namespace nullforge;

namespace {

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("NULLFORGE_OUT"))
    return fs::path(env);
  return fs::path("nullforge-out");
}

std::vector<std::string> enabled_ids(const std::vector<std::string>& selection) {
  std::vector<std::string> ids;
  for (const MutationOperator& op : enumerate_operators(selection))
    ids.push_back(op.id);
  return ids;
}

std::vector<std::string> merged_excludes(const std::vector<std::string>& extra) {
  std::vector<std::string> globs = default_exclude_globs();
  globs.insert(globs.end(), extra.begin(), extra.end());
  return globs;
}

struct ScanOptions {
  std::string root = ".";
  std::vector<std::string> includes = {"**/*.java"};
  std::vector<std::string> excludes;
  std::vector<std::string> operators = {"all"};
  std::string out_file; // stdout when empty
};

int cmd_scan(const ScanOptions& opt) {
  auto ids = enabled_ids(opt.operators);
  ScanResult scan = scan_project(opt.root, opt.includes, merged_excludes(opt.excludes));
  for (const auto& warning : scan.skipped)
    std::cerr << "warning: " << warning << "\n";

  std::vector<Json> lines;
  for (SourceFile& file : scan.files) {
    ParsedFile parsed = parse_source(std::move(file));
    for (const ParseError& e : parsed.errors)
      std::cerr << "warning: " << e.file_path << ":" << e.line << ": " << e.message << "\n";
    for (const MutationSite& site : locate_sites(parsed, ids)) {
      Json j;
      j["file"] = site.file_path;
      j["operator"] = site.operator_id;
      j["kind"] = to_string(site.kind);
      j["line"] = site.line;
      j["column"] = site.column;
      j["begin"] = site.begin;
      j["end"] = site.end;
      j["original"] = site.original;
      lines.push_back(std::move(j));
    }
  }
  if (opt.out_file.empty()) {
    for (const Json& j : lines)
      std::cout << j.dump() << "\n";
  } else {
    write_jsonl(opt.out_file, lines);
  }
  return 0;
}

struct RunOptions {
  std::string root = ".";
  std::string build_cmd;
  std::string reports_glob = "**/build/reports/*.xml";
  std::vector<std::string> operators = {"all"};
  std::vector<std::string> includes = {"**/*.java"};
  std::vector<std::string> excludes;
  int jobs = 1;
  double timeout_factor = 10.0;
  double timeout_floor = 30.0;
  std::string format = "md";
  std::string suppress_file;
  std::string out_dir = default_out_dir().string();
};

int cmd_run(const RunOptions& opt) {
  RunConfig config;
  config.project_root = opt.root;
  config.build_command = opt.build_cmd;
  config.report_glob = opt.reports_glob;
  config.timeout_factor = opt.timeout_factor;
  config.timeout_floor_seconds = opt.timeout_floor;
  config.jobs = opt.jobs;
  config.operator_selection = opt.operators;
  config.include_globs = opt.includes;
  config.exclude_globs = opt.excludes;
  if (!opt.suppress_file.empty())
    config.suppress_file = opt.suppress_file;

  RunManifest manifest;
  manifest.started_at = now_iso8601();
  Json cfg;
  cfg["root"] = opt.root;
  cfg["build_cmd"] = opt.build_cmd;
  cfg["reports"] = opt.reports_glob;
  cfg["operators"] = opt.operators;
  cfg["jobs"] = opt.jobs;
  cfg["timeout_factor"] = opt.timeout_factor;
  cfg["timeout_floor"] = opt.timeout_floor;
  cfg["suppress"] = opt.suppress_file;
  manifest.config = cfg;
  manifest.operator_roster = enabled_ids(opt.operators);

  std::set<std::string> suppressed;
  if (config.suppress_file)
    suppressed = load_suppressions(*config.suppress_file);
  manifest.suppressed_ids.assign(suppressed.begin(), suppressed.end());

  // scan + mutate
  ScanResult scan = scan_project(config.project_root, config.include_globs,
                                 merged_excludes(config.exclude_globs));
  for (const auto& warning : scan.skipped)
    manifest.warnings.push_back(warning);
  std::vector<MutationSite> sites;
  for (SourceFile& file : scan.files) {
    ParsedFile parsed = parse_source(std::move(file));
    for (const ParseError& e : parsed.errors)
      manifest.warnings.push_back(e.file_path + ":" + std::to_string(e.line) + ": " + e.message);
    auto file_sites = locate_sites(parsed, manifest.operator_roster);
    sites.insert(sites.end(), file_sites.begin(), file_sites.end());
  }
  std::vector<Mutant> mutants = generate_mutants(sites);
  std::cerr << "generated " << mutants.size() << " mutants\n";

  // baseline
  Baseline baseline = run_baseline(config);
  manifest.baseline_tests = baseline.tests;
  manifest.baseline_wall_seconds = baseline.wall_seconds;
  std::cerr << "baseline green: " << baseline.tests.size() << " tests in "
            << baseline.wall_seconds << "s\n";

  // execute
  fs::path scratch = fs::temp_directory_path() / ("nullforge-run-" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  std::vector<std::string> warnings;
  std::vector<MutantOutcome> outcomes;
  try {
    outcomes = execute_all(config, baseline, mutants, scratch, &warnings,
                           [](const Mutant& m, const MutantOutcome& o) {
                             std::cerr << "  " << m.id << " " << m.operator_id << " -> "
                                       << to_string(o.status) << "\n";
                           });
  } catch (...) {
    fs::remove_all(scratch);
    throw;
  }
  fs::remove_all(scratch);
  manifest.warnings.insert(manifest.warnings.end(), warnings.begin(), warnings.end());

  for (const MutantOutcome& o : outcomes) {
    if (suppressed.count(o.mutant_id))
      continue;
    switch (o.status) {
    case MutantStatus::Killed: ++manifest.counts.killed; break;
    case MutantStatus::Survived: ++manifest.counts.survived; break;
    case MutantStatus::Stillborn: ++manifest.counts.stillborn; break;
    case MutantStatus::Timeout: ++manifest.counts.timeout; break;
    case MutantStatus::Stale: ++manifest.counts.stale; break;
    }
  }
  manifest.finished_at = now_iso8601();

  // persist the run directory
  fs::path out = opt.out_dir;
  fs::create_directories(out);
  std::vector<Json> mutant_lines, outcome_lines;
  for (const Mutant& m : mutants)
    mutant_lines.push_back(mutant_to_json(m));
  for (const MutantOutcome& o : outcomes)
    outcome_lines.push_back(outcome_to_json(o));
  write_jsonl(out / "mutants.jsonl", mutant_lines);
  write_jsonl(out / "outcomes.jsonl", outcome_lines);
  write_manifest(out, manifest);

  Json analysis = analyze_run_dir(out);
  std::ofstream af(out / "analysis.json", std::ios::binary | std::ios::trunc);
  af << analysis.dump(2) << "\n";
  af.close();
  emit_report(out, opt.format);

  std::cerr << "run complete: " << manifest.counts.killed << " killed, "
            << manifest.counts.survived << " survived, " << manifest.counts.stillborn
            << " stillborn, " << manifest.counts.timeout << " timeout, "
            << manifest.counts.stale << " stale, " << suppressed.size() << " suppressed\n";
  std::cerr << "run directory: " << out.string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"nullforge - null-type aware mutation testing for Java projects"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI-style config file");

  ScanOptions scan_opt;
  CLI::App* scan = app.add_subcommand("scan", "Locate mutation sites and emit them as JSONL");
  scan->add_option("--root", scan_opt.root, "Project root directory");
  scan->add_option("--include", scan_opt.includes, "Include globs (default **/*.java)");
  scan->add_option("--exclude", scan_opt.excludes, "Extra exclude globs");
  scan->add_option("--operators", scan_opt.operators,
                   "Operator selection: all, traditional, null-type, or explicit ids");
  scan->add_option("--out", scan_opt.out_file, "Write sites to a file instead of stdout");

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Run the full mutation pipeline");
  run->add_option("--root", run_opt.root, "Project root directory");
  run->add_option("--build-cmd", run_opt.build_cmd, "Build/test command (run via sh -c)")
      ->required();
  run->add_option("--reports", run_opt.reports_glob,
                  "Glob for JUnit-XML reports, relative to the workspace");
  run->add_option("--operators", run_opt.operators, "Operator selection");
  run->add_option("--include", run_opt.includes, "Include globs");
  run->add_option("--exclude", run_opt.excludes, "Extra exclude globs");
  run->add_option("--jobs", run_opt.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  run->add_option("--timeout-factor", run_opt.timeout_factor,
                  "Timeout multiplier over baseline wall time");
  run->add_option("--timeout-floor", run_opt.timeout_floor, "Minimum mutant timeout in seconds");
  run->add_option("--format", run_opt.format, "Report format: json|csv|md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  run->add_option("--suppress", run_opt.suppress_file, "Suppression list of equivalent mutants");
  run->add_option("--out", run_opt.out_dir, "Run directory (default $NULLFORGE_OUT)");

  std::string analyze_dir;
  CLI::App* analyze = app.add_subcommand("analyze", "Recompute analysis from a run directory");
  analyze->add_option("--run-dir", analyze_dir, "Run directory")->required();

  std::string report_dir, report_format = "md";
  bool report_kills = false;
  CLI::App* report = app.add_subcommand("report", "Render reports from a run directory");
  report->add_option("--run-dir", report_dir, "Run directory")->required();
  report->add_option("--format", report_format, "Report format: json|csv|md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  report->add_flag("--killing-tests", report_kills, "List killing tests per killed mutant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (scan->parsed())
      return cmd_scan(scan_opt);
    if (run->parsed())
      return cmd_run(run_opt);
    if (analyze->parsed()) {
      Json analysis = analyze_run_dir(analyze_dir);
      std::ofstream af(fs::path(analyze_dir) / "analysis.json",
                       std::ios::binary | std::ios::trunc);
      af << analysis.dump(2) << "\n";
      std::cout << (fs::path(analyze_dir) / "analysis.json").string() << "\n";
      return 0;
    }
    if (report->parsed()) {
      for (const fs::path& f : emit_report(report_dir, report_format, report_kills))
        std::cout << f.string() << "\n";
      return 0;
    }
  } catch (const BaselineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
