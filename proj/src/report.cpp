#include "nullforge/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fs = std::filesystem;

namespace nullforge {

namespace {

std::string family_key(OperatorFamily f) {
  return f == OperatorFamily::Traditional ? "traditional" : "null_type";
}

Json counts_to_json(const StatusCounts& c) {
  Json j;
  j["killed"] = c.killed;
  j["survived"] = c.survived;
  j["stillborn"] = c.stillborn;
  j["timeout"] = c.timeout;
  j["stale"] = c.stale;
  j["total"] = c.total();
  return j;
}

Json optional_to_json(const std::optional<double>& v) {
  if (!v)
    return nullptr;
  return *v;
}

Json share_table_to_json(const ShareTable& t) {
  Json j;
  j["empty"] = t.empty;
  Json fam = Json::object();
  for (const auto& [f, v] : t.by_family)
    fam[family_key(f)] = v;
  j["by_family"] = fam;
  Json ops = Json::object();
  for (const auto& [o, v] : t.by_operator)
    ops[o] = v;
  j["by_operator"] = ops;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  out << text;
}

} // namespace

Json mutant_to_json(const Mutant& m) {
  Json j;
  j["id"] = m.id;
  j["ordinal"] = m.ordinal;
  j["operator"] = m.operator_id;
  j["family"] = to_string(m.family);
  j["file"] = m.file_path;
  j["line"] = m.line;
  j["column"] = m.column;
  j["begin"] = m.begin;
  j["end"] = m.end;
  j["original"] = m.original;
  j["replacement"] = m.replacement;
  return j;
}

Mutant mutant_from_json(const Json& j) {
  Mutant m;
  m.id = j.at("id").get<std::string>();
  m.ordinal = j.at("ordinal").get<uint64_t>();
  m.operator_id = j.at("operator").get<std::string>();
  m.family = j.at("family").get<std::string>() == "traditional" ? OperatorFamily::Traditional
                                                                : OperatorFamily::NullType;
  m.file_path = j.at("file").get<std::string>();
  m.line = j.at("line").get<int>();
  m.column = j.at("column").get<int>();
  m.begin = j.at("begin").get<size_t>();
  m.end = j.at("end").get<size_t>();
  m.original = j.at("original").get<std::string>();
  m.replacement = j.at("replacement").get<std::string>();
  return m;
}

Json outcome_to_json(const MutantOutcome& o) {
  Json j;
  j["mutant_id"] = o.mutant_id;
  j["status"] = to_string(o.status);
  j["killing_tests"] = o.killing_tests;
  j["wall_seconds"] = o.wall_seconds;
  j["kill_set_resolved"] = o.kill_set_resolved;
  return j;
}

MutantOutcome outcome_from_json(const Json& j) {
  MutantOutcome o;
  o.mutant_id = j.at("mutant_id").get<std::string>();
  o.status = mutant_status_from_string(j.at("status").get<std::string>());
  o.killing_tests = j.at("killing_tests").get<std::vector<std::string>>();
  o.wall_seconds = j.at("wall_seconds").get<double>();
  o.kill_set_resolved = j.at("kill_set_resolved").get<bool>();
  return o;
}

void write_jsonl(const fs::path& file, const std::vector<Json>& lines) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + file.string());
  for (const Json& j : lines)
    out << j.dump() << "\n";
}

std::vector<Json> read_jsonl(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + file.string());
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    out.push_back(Json::parse(line));
  }
  return out;
}

void write_manifest(const fs::path& run_dir, const RunManifest& m) {
  Json j;
  j["tool_version"] = m.tool_version;
  j["config"] = m.config;
  j["operator_roster"] = m.operator_roster;
  Json baseline;
  baseline["tests"] = m.baseline_tests;
  baseline["wall_seconds"] = m.baseline_wall_seconds;
  j["baseline"] = baseline;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["counts"] = counts_to_json(m.counts);
  j["suppressed_ids"] = m.suppressed_ids;
  j["warnings"] = m.warnings;
  write_text(run_dir / "manifest.json", j.dump(2) + "\n");
}

RunManifest read_manifest(const fs::path& run_dir) {
  Json j = Json::parse(read_text(run_dir / "manifest.json"));
  RunManifest m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.config = j.at("config");
  m.operator_roster = j.at("operator_roster").get<std::vector<std::string>>();
  m.baseline_tests = j.at("baseline").at("tests").get<std::vector<std::string>>();
  m.baseline_wall_seconds = j.at("baseline").at("wall_seconds").get<double>();
  m.started_at = j.value("started_at", "");
  m.finished_at = j.value("finished_at", "");
  const Json& c = j.at("counts");
  m.counts.killed = c.at("killed").get<size_t>();
  m.counts.survived = c.at("survived").get<size_t>();
  m.counts.stillborn = c.at("stillborn").get<size_t>();
  m.counts.timeout = c.at("timeout").get<size_t>();
  m.counts.stale = c.at("stale").get<size_t>();
  m.suppressed_ids = j.value("suppressed_ids", std::vector<std::string>{});
  m.warnings = j.value("warnings", std::vector<std::string>{});
  return m;
}

Json analysis_to_json(const ProjectSummary& summary, const SubsumptionGraph& graph,
                      const std::set<std::string>& subsuming,
                      const SubsumptionDistribution& distribution, size_t kill_matrix_mutants,
                      size_t unresolved_killed) {
  Json j;
  j["counts"] = counts_to_json(summary.overall);
  j["counts"]["suppressed"] = summary.suppressed;

  Json coverage;
  coverage["overall"] = optional_to_json(summary.coverage_overall);
  for (OperatorFamily f : {OperatorFamily::Traditional, OperatorFamily::NullType})
    coverage[family_key(f)] = optional_to_json(summary.coverage_per_family.count(f)
                                                   ? summary.coverage_per_family.at(f)
                                                   : std::nullopt);
  j["coverage"] = coverage;

  Json skr;
  for (OperatorFamily f : {OperatorFamily::Traditional, OperatorFamily::NullType})
    skr[family_key(f)] = optional_to_json(
        summary.skr_per_family.count(f) ? summary.skr_per_family.at(f) : std::nullopt);
  j["skr"] = skr;

  Json per_op = Json::array();
  for (const auto& [op, counts] : summary.per_operator) {
    Json row = counts_to_json(counts);
    Json prefixed;
    prefixed["operator"] = op;
    prefixed["family"] = to_string(operator_by_id(op).family);
    for (auto& [k, v] : row.items())
      prefixed[k] = v;
    per_op.push_back(prefixed);
  }
  j["per_operator"] = per_op;

  Json per_family = Json::array();
  for (OperatorFamily f : {OperatorFamily::Traditional, OperatorFamily::NullType}) {
    Json row = counts_to_json(summary.per_family.count(f) ? summary.per_family.at(f)
                                                          : StatusCounts{});
    Json prefixed;
    prefixed["family"] = to_string(f);
    for (auto& [k, v] : row.items())
      prefixed[k] = v;
    prefixed["subsuming"] = summary.subsuming_per_family.count(f)
                                ? summary.subsuming_per_family.at(f)
                                : 0;
    per_family.push_back(prefixed);
  }
  j["per_family"] = per_family;

  Json sub;
  sub["matrix_mutants"] = kill_matrix_mutants;
  Json classes = Json::array();
  for (size_t i = 0; i < graph.classes.size(); ++i) {
    Json cls;
    cls["representative"] = graph.representatives[i];
    cls["members"] = graph.classes[i];
    classes.push_back(cls);
  }
  sub["classes"] = classes;
  sub["edges"] = graph.edges.size();
  sub["subsuming_mutants"] = std::vector<std::string>(subsuming.begin(), subsuming.end());
  sub["excluded_unresolved_killed"] = unresolved_killed;
  j["subsumption"] = sub;

  Json dist;
  dist["all"] = share_table_to_json(distribution.all);
  dist["killed"] = share_table_to_json(distribution.killed);
  dist["subsuming"] = share_table_to_json(distribution.subsuming);
  j["distributions"] = dist;
  return j;
}

Json analyze_run_dir(const fs::path& run_dir) {
  RunManifest manifest = read_manifest(run_dir);
  std::vector<Mutant> mutants;
  for (const Json& j : read_jsonl(run_dir / "mutants.jsonl"))
    mutants.push_back(mutant_from_json(j));
  std::vector<MutantOutcome> outcomes;
  for (const Json& j : read_jsonl(run_dir / "outcomes.jsonl"))
    outcomes.push_back(outcome_from_json(j));

  std::set<std::string> suppressed(manifest.suppressed_ids.begin(),
                                   manifest.suppressed_ids.end());
  std::vector<MutantOutcome> scored;
  for (const MutantOutcome& o : outcomes)
    if (!suppressed.count(o.mutant_id))
      scored.push_back(o);

  KillMatrix matrix = build_kill_matrix(mutants, scored, manifest.baseline_tests);
  SubsumptionGraph graph = dynamic_subsumption(matrix);
  std::set<std::string> subsuming = subsuming_set(graph);

  size_t unresolved_killed = 0;
  for (const MutantOutcome& o : scored)
    if (o.status == MutantStatus::Killed && (!o.kill_set_resolved || o.killing_tests.empty()))
      ++unresolved_killed;

  ProjectSummary summary = summarize(run_dir.filename().string(), mutants, outcomes,
                                     manifest.operator_roster, suppressed, subsuming);
  SubsumptionDistribution dist =
      subsumption_distribution(mutants, outcomes, subsuming, suppressed);
  return analysis_to_json(summary, graph, subsuming, dist, matrix.rows(), unresolved_killed);
}

std::vector<fs::path> emit_report(const fs::path& run_dir, const std::string& format,
                                  bool include_killing_tests) {
  fs::path analysis_file = run_dir / "analysis.json";
  Json analysis;
  if (fs::exists(analysis_file))
    analysis = Json::parse(read_text(analysis_file));
  else
    analysis = analyze_run_dir(run_dir);

  fs::path reports = run_dir / "reports";
  fs::create_directories(reports);
  std::vector<fs::path> written;

  if (format == "json") {
    fs::path out = reports / "report.json";
    write_text(out, analysis.dump(2) + "\n");
    written.push_back(out);
    return written;
  }

  if (format == "csv") {
    {
      std::ostringstream csv;
      csv << "operator,family,killed,survived,stillborn,timeout,stale,total\n";
      for (const Json& row : analysis.at("per_operator"))
        csv << csv_escape(row.at("operator").get<std::string>()) << ','
            << row.at("family").get<std::string>() << ',' << row.at("killed") << ','
            << row.at("survived") << ',' << row.at("stillborn") << ',' << row.at("timeout")
            << ',' << row.at("stale") << ',' << row.at("total") << "\n";
      fs::path out = reports / "per_operator.csv";
      write_text(out, csv.str());
      written.push_back(out);
    }
    {
      std::ostringstream csv;
      csv << "family,killed,survived,stillborn,timeout,stale,total,subsuming\n";
      for (const Json& row : analysis.at("per_family"))
        csv << row.at("family").get<std::string>() << ',' << row.at("killed") << ','
            << row.at("survived") << ',' << row.at("stillborn") << ',' << row.at("timeout")
            << ',' << row.at("stale") << ',' << row.at("total") << ',' << row.at("subsuming")
            << "\n";
      fs::path out = reports / "per_family.csv";
      write_text(out, csv.str());
      written.push_back(out);
    }
    return written;
  }

  if (format == "md") {
    std::vector<Mutant> mutants;
    for (const Json& j : read_jsonl(run_dir / "mutants.jsonl"))
      mutants.push_back(mutant_from_json(j));
    std::map<std::string, const Mutant*> by_id;
    for (const Mutant& m : mutants)
      by_id[m.id] = &m;
    std::vector<MutantOutcome> outcomes;
    for (const Json& j : read_jsonl(run_dir / "outcomes.jsonl"))
      outcomes.push_back(outcome_from_json(j));
    RunManifest manifest = read_manifest(run_dir);
    std::set<std::string> suppressed(manifest.suppressed_ids.begin(),
                                     manifest.suppressed_ids.end());

    std::ostringstream md;
    md << "# Mutation testing summary\n\n";
    const Json& counts = analysis.at("counts");
    md << "| status | count |\n|---|---|\n";
    for (const char* key : {"killed", "survived", "stillborn", "timeout", "stale", "suppressed",
                            "total"})
      md << "| " << key << " | " << counts.at(key) << " |\n";
    md << "\n";
    const Json& coverage = analysis.at("coverage");
    auto cov_str = [&](const char* key) {
      const Json& v = coverage.at(key);
      if (v.is_null())
        return std::string("n/a");
      std::ostringstream s;
      s << std::fixed << std::setprecision(4) << v.get<double>();
      return s.str();
    };
    md << "Mutation coverage: overall " << cov_str("overall") << ", traditional "
       << cov_str("traditional") << ", null-type " << cov_str("null_type") << "\n\n";

    md << "## Surviving mutants\n\n";
    bool any_survivor = false;
    for (const MutantOutcome& o : outcomes) {
      if (o.status != MutantStatus::Survived || suppressed.count(o.mutant_id))
        continue;
      const Mutant& m = *by_id.at(o.mutant_id);
      any_survivor = true;
      md << "- `" << m.id << "` " << m.operator_id << " at " << m.file_path << ":" << m.line
         << ":" << m.column << " — `" << (m.original.empty() ? "(insertion)" : m.original)
         << "` -> `" << m.replacement << "`\n";
    }
    if (!any_survivor)
      md << "(none)\n";
    md << "\n";

    if (include_killing_tests) {
      md << "## Killing tests\n\n";
      for (const MutantOutcome& o : outcomes) {
        if (o.status != MutantStatus::Killed || suppressed.count(o.mutant_id))
          continue;
        const Mutant& m = *by_id.at(o.mutant_id);
        md << "- `" << m.id << "` " << m.operator_id << " at " << m.file_path << ":" << m.line
           << ": ";
        if (o.killing_tests.empty()) {
          md << "(kill set unresolved)\n";
        } else {
          bool first = true;
          for (const auto& t : o.killing_tests) {
            md << (first ? "" : ", ") << t;
            first = false;
          }
          md << "\n";
        }
      }
      md << "\n";
    }

    fs::path out = reports / "summary.md";
    write_text(out, md.str());
    written.push_back(out);
    return written;
  }

  throw std::invalid_argument("unknown report format '" + format + "' (expected json|csv|md)");
}

} // namespace nullforge
