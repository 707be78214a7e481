#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nullforge/report.hpp"

using namespace nullforge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Mutant sample_mutant(const std::string& id, uint64_t ordinal, const std::string& op,
                     OperatorFamily family) {
  Mutant m;
  m.id = id;
  m.ordinal = ordinal;
  m.operator_id = op;
  m.family = family;
  m.file_path = "src/main/java/A.java";
  m.line = 3;
  m.column = 7;
  m.begin = 40;
  m.end = 52;
  m.original = "return name;";
  m.replacement = "return null;";
  return m;
}

// A small but complete run directory, written twice to probe determinism.
fs::path write_run_dir(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::vector<Mutant> mutants = {
      sample_mutant("00aa", 0, "NullifyReturnValue", OperatorFamily::NullType),
      sample_mutant("00bb", 1, "ArithmeticOperatorReplacementBinary", OperatorFamily::Traditional),
      sample_mutant("00cc", 2, "NegateNullCheck", OperatorFamily::NullType),
      sample_mutant("00dd", 3, "NullifyObjectInitialization", OperatorFamily::NullType),
  };
  mutants[1].original = "+";
  mutants[1].replacement = "-";

  MutantOutcome oa{"00aa", MutantStatus::Killed, {"T.t1", "T.t2"}, 0.5, true};
  MutantOutcome ob{"00bb", MutantStatus::Killed, {"T.t1"}, 0.4, true};
  MutantOutcome oc{"00cc", MutantStatus::Survived, {}, 0.3, true};
  MutantOutcome od{"00dd", MutantStatus::Survived, {}, 0.3, true};

  std::vector<Json> mlines, olines;
  for (const Mutant& m : mutants)
    mlines.push_back(mutant_to_json(m));
  for (const MutantOutcome& o : {oa, ob, oc, od})
    olines.push_back(outcome_to_json(o));
  write_jsonl(dir / "mutants.jsonl", mlines);
  write_jsonl(dir / "outcomes.jsonl", olines);

  RunManifest manifest;
  manifest.config = Json{{"build_command", "python3 runner.py"}, {"jobs", 1}};
  manifest.operator_roster = {"ArithmeticOperatorReplacementBinary", "NegateNullCheck",
                              "NullifyObjectInitialization", "NullifyReturnValue"};
  manifest.baseline_tests = {"T.t1", "T.t2"};
  manifest.baseline_wall_seconds = 0.25;
  manifest.started_at = "2026-08-23T10:00:00Z";
  manifest.finished_at = "2026-08-23T10:00:05Z";
  manifest.counts.killed = 2;
  manifest.counts.survived = 1;
  manifest.suppressed_ids = {"00dd"};
  write_manifest(dir, manifest);

  std::ofstream(dir / "analysis.json") << analyze_run_dir(dir).dump(2) << "\n";
  return dir;
}

} // namespace

TEST_CASE("mutant and outcome JSON round-trip with stable field order") {
  Mutant m = sample_mutant("deadbeef00112233", 7, "NullifyReturnValue", OperatorFamily::NullType);
  Json j = mutant_to_json(m);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"id", "ordinal", "operator", "family", "file", "line",
                                         "column", "begin", "end", "original", "replacement"});
  Mutant back = mutant_from_json(j);
  CHECK(back.id == m.id);
  CHECK(back.ordinal == m.ordinal);
  CHECK(back.operator_id == m.operator_id);
  CHECK(back.family == m.family);
  CHECK(back.begin == m.begin);
  CHECK(back.end == m.end);
  CHECK(back.original == m.original);
  CHECK(back.replacement == m.replacement);

  MutantOutcome o{"deadbeef00112233", MutantStatus::Timeout, {"T.a", "T.b"}, 1.5, true};
  MutantOutcome oback = outcome_from_json(outcome_to_json(o));
  CHECK(oback.mutant_id == o.mutant_id);
  CHECK(oback.status == o.status);
  CHECK(oback.killing_tests == o.killing_tests);
  CHECK(oback.kill_set_resolved == o.kill_set_resolved);
}

TEST_CASE("status strings round-trip") {
  for (MutantStatus s : {MutantStatus::Killed, MutantStatus::Survived, MutantStatus::Stillborn,
                         MutantStatus::Timeout, MutantStatus::Stale})
    CHECK(mutant_status_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(mutant_status_from_string("zombie"), std::invalid_argument);
}

TEST_CASE("jsonl round-trip preserves line order") {
  fs::path file = fs::temp_directory_path() / "nf-test.jsonl";
  std::vector<Json> lines = {Json{{"k", 1}}, Json{{"k", 2}}, Json{{"k", 3}}};
  write_jsonl(file, lines);
  auto back = read_jsonl(file);
  REQUIRE(back.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    CHECK(back[i]["k"] == int(i + 1));
  fs::remove(file);
}

TEST_CASE("manifest round-trip keeps timestamps out of analysis") {
  fs::path dir = fs::temp_directory_path() / "nf-report-manifest";
  write_run_dir(dir);
  RunManifest m = read_manifest(dir);
  CHECK(m.tool_version == kToolVersion);
  CHECK(m.baseline_tests == std::vector<std::string>{"T.t1", "T.t2"});
  CHECK(m.suppressed_ids == std::vector<std::string>{"00dd"});
  CHECK(m.started_at == "2026-08-23T10:00:00Z");

  // timestamps are confined to the manifest
  std::string analysis = slurp(dir / "analysis.json");
  CHECK(analysis.find("2026-08-23") == std::string::npos);
  CHECK(analysis.find("started_at") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("analyze_run_dir: counts, coverage, subsumption and suppression") {
  fs::path dir = fs::temp_directory_path() / "nf-report-analyze";
  write_run_dir(dir);
  Json a = analyze_run_dir(dir);

  // suppressed survivor 00dd is excluded everywhere
  CHECK(a["counts"]["killed"] == 2);
  CHECK(a["counts"]["survived"] == 1);
  CHECK(a["counts"]["suppressed"] == 1);
  CHECK(a["coverage"]["overall"].get<double>() == doctest::Approx(2.0 / 3.0));

  // 00bb kills a subset of 00aa's kill set, so 00bb alone is subsuming
  auto subsuming = a["subsumption"]["subsuming_mutants"];
  REQUIRE(subsuming.size() == 1);
  CHECK(subsuming[0] == "00bb");
  CHECK(a["subsumption"]["classes"].size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("analysis output is byte-identical across repeated computation") {
  fs::path d1 = fs::temp_directory_path() / "nf-report-det1";
  fs::path d2 = fs::temp_directory_path() / "nf-report-det2";
  write_run_dir(d1);
  write_run_dir(d2);
  CHECK(slurp(d1 / "analysis.json") == slurp(d2 / "analysis.json"));
  CHECK(analyze_run_dir(d1).dump(2) == analyze_run_dir(d2).dump(2));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("emit_report: json, csv and markdown renderings") {
  fs::path dir = fs::temp_directory_path() / "nf-report-emit";
  write_run_dir(dir);

  auto json_files = emit_report(dir, "json");
  REQUIRE(json_files.size() == 1);
  Json r = Json::parse(slurp(json_files[0]));
  CHECK(r["counts"]["killed"] == 2);

  auto csv_files = emit_report(dir, "csv");
  REQUIRE(csv_files.size() == 2);
  std::string per_op = slurp(dir / "reports/per_operator.csv");
  CHECK(per_op.find("NullifyReturnValue") != std::string::npos);
  std::string per_family = slurp(dir / "reports/per_family.csv");
  CHECK(per_family.find("null-type") != std::string::npos);

  auto md_files = emit_report(dir, "md");
  REQUIRE(md_files.size() == 1);
  std::string md = slurp(md_files[0]);
  // survivors are listed with location and the applied change
  CHECK(md.find("src/main/java/A.java:3") != std::string::npos);
  CHECK(md.find("NegateNullCheck") != std::string::npos);
  CHECK(md.find("T.t1") == std::string::npos); // killing tests off by default

  std::string md_with_tests = slurp(emit_report(dir, "md", true)[0]);
  CHECK(md_with_tests.find("T.t1") != std::string::npos);

  CHECK_THROWS_AS(emit_report(dir, "pdf"), std::invalid_argument);
  fs::remove_all(dir);
}
