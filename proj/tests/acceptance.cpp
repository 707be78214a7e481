// Acceptance suite: six end-to-end checks against the bundled fixture
// project and desk-scale reference data. Prints one PASS/FAIL line per
// criterion and exits nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nullforge/analysis.hpp"
#include "nullforge/harness.hpp"
#include "nullforge/operators.hpp"
#include "nullforge/report.hpp"
#include "nullforge/source_model.hpp"
#include "nullforge/subprocess.hpp"

using namespace nullforge;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what;
  if (!ok && !detail.empty())
    std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok)
    ++g_failures;
}

fs::path fixture_root() { return fs::path(NF_FIXTURE_DIR) / "videostore"; }

RunConfig fixture_config(const std::string& suite) {
  RunConfig cfg;
  cfg.project_root = fixture_root();
  cfg.build_command = "python3 build.py " + suite;
  cfg.jobs = 4;
  return cfg;
}

struct FixtureRun {
  std::vector<Mutant> mutants;
  std::vector<MutantOutcome> outcomes;
  Baseline baseline;
};

std::vector<Mutant> fixture_mutants() {
  std::vector<std::string> ids;
  for (const auto& op : operator_catalog())
    ids.push_back(op.id);
  std::vector<MutationSite> sites;
  for (const SourceFile& f : scan_project(fixture_root()).files) {
    ParsedFile p = parse_source(f);
    if (!p.ok())
      throw std::runtime_error("fixture parse failure in " + f.path);
    for (auto& s : locate_sites(p, ids))
      sites.push_back(std::move(s));
  }
  return generate_mutants(sites);
}

FixtureRun run_fixture(const std::string& suite) {
  FixtureRun run;
  run.mutants = fixture_mutants();
  RunConfig cfg = fixture_config(suite);
  run.baseline = run_baseline(cfg);
  fs::path scratch = fs::temp_directory_path() / ("nf-accept-" + suite);
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  run.outcomes = execute_all(cfg, run.baseline, run.mutants, scratch);
  fs::remove_all(scratch);
  return run;
}

std::map<std::string, MutantStatus> status_by_id(const FixtureRun& run) {
  std::map<std::string, MutantStatus> out;
  for (const MutantOutcome& o : run.outcomes)
    out[o.mutant_id] = o.status;
  return out;
}

// ---------------------------------------------------------------------------
// criterion 1: fixture behavior under the three bundled suites

void criterion1() {
  std::set<std::string> suppressed =
      load_suppressions(fixture_root() / "suppressions.txt");

  Baseline orig = run_baseline(fixture_config("orig"));
  bool ok = true;
  std::ostringstream why;
  if (orig.tests.size() != 4) {
    ok = false;
    why << "orig suite has " << orig.tests.size() << " tests, expected 4; ";
  }

  FixtureRun tadq = run_fixture("tadq");
  auto status = status_by_id(tadq);
  std::map<std::string, const Mutant*> by_id;
  for (const Mutant& m : tadq.mutants)
    by_id[m.id] = &m;

  // (a) every non-stillborn traditional mutant is killed or suppressed
  for (const Mutant& m : tadq.mutants) {
    if (m.family != OperatorFamily::Traditional || suppressed.count(m.id))
      continue;
    MutantStatus s = status.at(m.id);
    if (s != MutantStatus::Killed && s != MutantStatus::Timeout && s != MutantStatus::Stillborn) {
      ok = false;
      why << "traditional mutant " << m.id << " is " << to_string(s) << "; ";
    }
  }

  // (b) >=3 non-suppressed null-type survivors, at least one object-init one
  size_t null_survivors = 0, null_survivor_noi = 0;
  for (const Mutant& m : tadq.mutants) {
    if (m.family != OperatorFamily::NullType || suppressed.count(m.id))
      continue;
    if (status.at(m.id) == MutantStatus::Survived) {
      ++null_survivors;
      if (m.operator_id == "NullifyObjectInitialization")
        ++null_survivor_noi;
    }
  }
  if (null_survivors < 3 || null_survivor_noi < 1) {
    ok = false;
    why << "tadq null-type survivors=" << null_survivors << " (object-init " << null_survivor_noi
        << "); ";
  }

  // (c) under the null-adequate suite every non-suppressed null-type mutant dies
  FixtureRun nadq = run_fixture("nadq");
  auto nstatus = status_by_id(nadq);
  size_t nadq_null_survivors = 0, suppressed_survivors = 0;
  for (const Mutant& m : nadq.mutants) {
    if (m.family != OperatorFamily::NullType)
      continue;
    if (nstatus.at(m.id) == MutantStatus::Survived) {
      if (suppressed.count(m.id))
        ++suppressed_survivors;
      else
        ++nadq_null_survivors;
    }
  }
  if (nadq_null_survivors != 0 || suppressed_survivors < 1) {
    ok = false;
    why << "nadq null-type survivors=" << nadq_null_survivors << ", suppressed survivors="
        << suppressed_survivors << "; ";
  }

  report(1, ok, "fixture suites: traditional adequacy leaves null-type faults undetected",
         why.str());
}

// ---------------------------------------------------------------------------
// criterion 2: survivor-ratio correlation over the published 15-project counts

void criterion2() {
  const std::vector<std::array<double, 4>> counts = {
      {24, 318, 71, 415},      {31, 457, 358, 1062},   {17, 189, 37, 494},
      {559, 5455, 564, 5469},  {892, 3978, 836, 5371}, {364, 1612, 147, 927},
      {638, 2705, 1179, 5851}, {111, 478, 795, 2111},  {49, 178, 69, 383},
      {81, 273, 137, 211},     {291, 928, 553, 1455},  {416, 940, 834, 1457},
      {398, 672, 551, 2964},   {10558, 5603, 8563, 6248}, {5205, 2734, 5099, 4613}};
  std::vector<ProjectSummary> projects;
  for (const auto& [ts, tk, ns, nk] : counts) {
    ProjectSummary s;
    s.per_family[OperatorFamily::Traditional].survived = size_t(ts);
    s.per_family[OperatorFamily::Traditional].killed = size_t(tk);
    s.per_family[OperatorFamily::NullType].survived = size_t(ns);
    s.per_family[OperatorFamily::NullType].killed = size_t(nk);
    s.skr_per_family[OperatorFamily::Traditional] = ts / tk;
    s.skr_per_family[OperatorFamily::NullType] = ns / nk;
    projects.push_back(s);
  }
  Correlation c = skr_correlation(projects);
  bool ok = c.pairs_used == 15 && !c.degenerate && std::abs(c.r_squared - 0.81) <= 0.15;
  std::ostringstream why;
  why << "r_squared=" << c.r_squared << ", pairs=" << c.pairs_used;
  report(2, ok, "family survivor-to-kill ratios correlate across the 15-project corpus",
         why.str());
}

// ---------------------------------------------------------------------------
// criterion 3: subsumption analysis equals the brute-force subset oracle

struct OracleResult {
  std::set<std::pair<std::string, std::string>> edges; // representative pairs
  std::set<std::string> subsuming;
  size_t classes = 0;
};

OracleResult oracle(const std::vector<std::string>& ids,
                    const std::vector<std::vector<bool>>& rows) {
  OracleResult out;
  std::map<std::vector<bool>, std::vector<std::string>> groups;
  for (size_t i = 0; i < ids.size(); ++i)
    groups[rows[i]].push_back(ids[i]);
  std::vector<std::vector<bool>> killsets;
  std::vector<std::string> reps;
  for (auto& [ks, members] : groups) {
    reps.push_back(*std::min_element(members.begin(), members.end()));
    killsets.push_back(ks);
  }
  out.classes = reps.size();
  auto subset = [](const std::vector<bool>& a, const std::vector<bool>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i])
        return false;
    return true;
  };
  for (size_t a = 0; a < killsets.size(); ++a) {
    bool minimal = true;
    for (size_t b = 0; b < killsets.size(); ++b) {
      if (a == b)
        continue;
      if (subset(killsets[a], killsets[b]))
        out.edges.insert({reps[a], reps[b]});
      if (subset(killsets[b], killsets[a]))
        minimal = false;
    }
    if (minimal)
      out.subsuming.insert(reps[a]);
  }
  return out;
}

// Runs one matrix through the library and the oracle; returns mismatch count.
size_t check_matrix(const std::vector<std::vector<bool>>& rows, size_t tests) {
  std::vector<std::string> baseline;
  for (size_t t = 0; t < tests; ++t)
    baseline.push_back("T.t" + std::to_string(100 + t));
  std::vector<Mutant> mutants;
  std::vector<MutantOutcome> outcomes;
  std::vector<std::string> kept_ids;
  std::vector<std::vector<bool>> kept_rows;
  for (size_t i = 0; i < rows.size(); ++i) {
    std::string id = "m" + std::to_string(100 + i);
    Mutant m;
    m.id = id;
    m.ordinal = i;
    m.operator_id = "NullifyReturnValue";
    m.family = OperatorFamily::NullType;
    mutants.push_back(m);
    MutantOutcome o;
    o.mutant_id = id;
    std::vector<std::string> kills;
    for (size_t t = 0; t < tests; ++t)
      if (rows[i][t])
        kills.push_back(baseline[t]);
    if (kills.empty()) {
      o.status = MutantStatus::Survived;
    } else {
      o.status = MutantStatus::Killed;
      o.killing_tests = kills;
      kept_ids.push_back(id);
      kept_rows.push_back(rows[i]);
    }
    outcomes.push_back(o);
  }
  KillMatrix matrix = build_kill_matrix(mutants, outcomes, baseline);
  SubsumptionGraph graph = dynamic_subsumption(matrix);
  std::set<std::string> subsuming = subsuming_set(graph);

  OracleResult want = oracle(kept_ids, kept_rows);
  size_t mismatches = 0;
  if (graph.classes.size() != want.classes)
    ++mismatches;
  std::set<std::pair<std::string, std::string>> got_edges;
  for (const auto& [a, b] : graph.edges)
    got_edges.insert({graph.representatives[a], graph.representatives[b]});
  if (got_edges != want.edges)
    ++mismatches;
  if (subsuming != want.subsuming)
    ++mismatches;
  return mismatches;
}

void criterion3() {
  size_t mismatches = 0, checked = 0;
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 1000; ++iter) {
    size_t n_mut = 1 + rng() % 10;
    size_t n_test = 1 + rng() % 10;
    std::uniform_int_distribution<int> density(0, 3);
    std::vector<std::vector<bool>> rows(n_mut, std::vector<bool>(n_test, false));
    for (auto& row : rows)
      for (size_t t = 0; t < n_test; ++t)
        row[t] = density(rng) == 0;
    mismatches += check_matrix(rows, n_test);
    ++checked;
  }
  // all matrices up to 4 mutants x 3 tests, exhaustively
  for (size_t r = 1; r <= 4; ++r)
    for (size_t c = 1; c <= 3; ++c) {
      size_t bits = r * c;
      for (uint64_t v = 0; v < (uint64_t(1) << bits); ++v) {
        std::vector<std::vector<bool>> rows(r, std::vector<bool>(c, false));
        for (size_t b = 0; b < bits; ++b)
          rows[b / c][b % c] = (v >> b) & 1;
        mismatches += check_matrix(rows, c);
        ++checked;
      }
    }
  std::ostringstream why;
  why << mismatches << " mismatches over " << checked << " matrices";
  report(3, mismatches == 0,
         "subsumption graph and subsuming set match the brute-force subset oracle", why.str());
}

// ---------------------------------------------------------------------------
// criterion 4: conservation per operator; repeat runs are byte-identical

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void criterion4() {
  bool ok = true;
  std::ostringstream why;

  // conservation: per-operator statuses add up to the generated census
  FixtureRun run = run_fixture("tadq");
  std::map<std::string, size_t> generated, accounted;
  auto status = status_by_id(run);
  for (const Mutant& m : run.mutants) {
    ++generated[m.operator_id];
    ++accounted[m.operator_id]; // every outcome has exactly one status
    if (!status.count(m.id)) {
      ok = false;
      why << "missing outcome for " << m.id << "; ";
    }
  }
  if (run.outcomes.size() != run.mutants.size()) {
    ok = false;
    why << "outcome count " << run.outcomes.size() << " != mutant count " << run.mutants.size()
        << "; ";
  }
  StatusCounts overall;
  for (const MutantOutcome& o : run.outcomes) {
    switch (o.status) {
      case MutantStatus::Killed: ++overall.killed; break;
      case MutantStatus::Survived: ++overall.survived; break;
      case MutantStatus::Stillborn: ++overall.stillborn; break;
      case MutantStatus::Timeout: ++overall.timeout; break;
      case MutantStatus::Stale: ++overall.stale; break;
    }
  }
  if (overall.total() != run.mutants.size()) {
    ok = false;
    why << "status total " << overall.total() << " != generated " << run.mutants.size() << "; ";
  }
  if (generated != accounted) {
    ok = false;
    why << "per-operator accounting mismatch; ";
  }

  // determinism: two full command-line runs agree byte for byte
  fs::path out1 = fs::temp_directory_path() / "nf-accept-det1";
  fs::path out2 = fs::temp_directory_path() / "nf-accept-det2";
  for (const fs::path& out : {out1, out2}) {
    fs::remove_all(out);
    std::string cmd = std::string(NF_TOOL_PATH) + " run --root . --build-cmd 'python3 build.py nadq'" +
                      " --jobs 4 --suppress suppressions.txt --out " + out.string();
    CommandResult r = run_command(cmd, fixture_root(), {}, 240);
    if (r.exit_code != 0 || r.timed_out) {
      ok = false;
      why << "tool run into " << out.filename().string() << " exited " << r.exit_code << "; ";
    }
  }
  if (ok) {
    auto ids_and_statuses = [](const fs::path& out) {
      std::map<std::string, std::string> m;
      for (const Json& j : read_jsonl(out / "outcomes.jsonl"))
        m[j.at("mutant_id").get<std::string>()] = j.at("status").get<std::string>();
      return m;
    };
    if (ids_and_statuses(out1) != ids_and_statuses(out2)) {
      ok = false;
      why << "mutant ids/statuses differ between runs; ";
    }
    if (slurp(out1 / "analysis.json") != slurp(out2 / "analysis.json")) {
      ok = false;
      why << "analysis.json differs between runs; ";
    }
    if (slurp(out1 / "mutants.jsonl") != slurp(out2 / "mutants.jsonl")) {
      ok = false;
      why << "mutants.jsonl differs between runs; ";
    }
  }
  fs::remove_all(out1);
  fs::remove_all(out2);

  report(4, ok, "status conservation holds and repeat runs are byte-identical", why.str());
}

// ---------------------------------------------------------------------------
// criterion 5: null-type operator catalog with golden transformations

std::vector<Mutant> mutants_of(const std::string& text, const std::string& op) {
  ParsedFile p = parse_source(SourceFile::from_text("T.java", text));
  if (!p.ok())
    throw std::runtime_error("snippet parse failure");
  return generate_mutants(locate_sites(p, {op}));
}

void criterion5() {
  bool ok = true;
  std::ostringstream why;

  auto null_ops = enumerate_operators({"null-type"});
  std::set<std::string> ids;
  for (const auto& op : null_ops)
    ids.insert(op.id);
  std::set<std::string> expected = {"NullifyReturnValue", "NullifyInputVariable",
                                    "NullifyObjectInitialization", "NegateNullCheck"};
  if (ids != expected) {
    ok = false;
    why << "null-type roster mismatch; ";
  }

  // golden transformations, one per operator
  struct Golden {
    const char* op;
    const char* before;
    const char* after;
  };
  const Golden goldens[] = {
      {"NullifyReturnValue", "class T { String f(){ return buildName(); } }",
       "class T { String f(){ return null; } }"},
      {"NullifyInputVariable", "class T { int f(Movie m){ return m.days(); } }",
       "class T { int f(Movie m){ m = null; return m.days(); } }"},
      {"NullifyObjectInitialization", "class T { void f(){ Movie m = new RegularMovie(t); } }",
       "class T { void f(){ Movie m = null; } }"},
      {"NegateNullCheck", "class T { boolean f(Movie m){ return m == null; } }",
       "class T { boolean f(Movie m){ return m != null; } }"},
  };
  for (const Golden& g : goldens) {
    auto ms = mutants_of(g.before, g.op);
    if (ms.size() != 1 || apply_mutant(g.before, ms[0]) != g.after) {
      ok = false;
      why << g.op << " golden transformation failed; ";
    }
  }

  // involution: flipping a null check twice restores the original text
  size_t involutions = 0;
  for (int i = 0; i < 100; ++i) {
    std::string op = (i % 2) ? "==" : "!=";
    std::string text = "class C" + std::to_string(i) + " { boolean f(Movie m" +
                       std::to_string(i) + "){ return m" + std::to_string(i) + " " + op +
                       " null; } }";
    auto first = mutants_of(text, "NegateNullCheck");
    if (first.size() != 1)
      continue;
    std::string once = apply_mutant(text, first[0]);
    auto second = mutants_of(once, "NegateNullCheck");
    if (second.size() == 1 && apply_mutant(once, second[0]) == text)
      ++involutions;
  }
  if (involutions != 100) {
    ok = false;
    why << "involution held for " << involutions << "/100 sites; ";
  }

  report(5, ok, "null-type operator catalog is exact and negation is an involution", why.str());
}

// ---------------------------------------------------------------------------
// criterion 6: coverage arithmetic at desk scale

void criterion6() {
  double a = mutation_coverage_counts(22, 3, 1);
  double b = mutation_coverage_counts(318, 24, 0);
  bool ok = std::abs(a - 22.0 / 24.0) <= 1e-12 && std::abs(b - 318.0 / 342.0) <= 1e-12;
  std::ostringstream why;
  why << "got " << a << " and " << b;
  report(6, ok, "mutation coverage matches 22/24 and 318/342 within 1e-12", why.str());
}

} // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
  } catch (const std::exception& e) {
    std::cout << "acceptance suite aborted: " << e.what() << std::endl;
    return 2;
  }
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
