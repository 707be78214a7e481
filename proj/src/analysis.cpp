#include "nullforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace nullforge {

namespace {

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i])
      return false;
  return true;
}

} // namespace

double mutation_coverage_counts(size_t killed, size_t survived, size_t suppressed_survivors,
                                size_t timeout) {
  size_t numer = killed + timeout;
  size_t denom = killed + timeout + survived - suppressed_survivors;
  if (denom == 0)
    throw AnalysisError("mutation coverage undefined: no scoreable mutants");
  return static_cast<double>(numer) / static_cast<double>(denom);
}

double mutation_coverage(const std::vector<Mutant>& mutants,
                         const std::vector<MutantOutcome>& outcomes,
                         const std::set<std::string>& suppressed_ids) {
  (void)mutants;
  size_t killed = 0, survived = 0, timeout = 0;
  for (const MutantOutcome& o : outcomes) {
    if (suppressed_ids.count(o.mutant_id))
      continue;
    switch (o.status) {
    case MutantStatus::Killed: ++killed; break;
    case MutantStatus::Timeout: ++timeout; break;
    case MutantStatus::Survived: ++survived; break;
    case MutantStatus::Stillborn:
    case MutantStatus::Stale: break; // not valid programs / not measured
    }
  }
  return mutation_coverage_counts(killed, survived, 0, timeout);
}

KillMatrix build_kill_matrix(const std::vector<Mutant>& mutants,
                             const std::vector<MutantOutcome>& outcomes,
                             const std::vector<std::string>& baseline_tests) {
  std::map<std::string, uint64_t> ordinal_of;
  for (const Mutant& m : mutants)
    ordinal_of[m.id] = m.ordinal;

  KillMatrix matrix;
  matrix.test_ids = baseline_tests;
  std::sort(matrix.test_ids.begin(), matrix.test_ids.end());
  std::map<std::string, size_t> col_of;
  for (size_t c = 0; c < matrix.test_ids.size(); ++c)
    col_of[matrix.test_ids[c]] = c;

  std::vector<const MutantOutcome*> rows;
  for (const MutantOutcome& o : outcomes) {
    if (o.status != MutantStatus::Killed || !o.kill_set_resolved || o.killing_tests.empty())
      continue;
    rows.push_back(&o);
  }
  std::sort(rows.begin(), rows.end(), [&](const MutantOutcome* a, const MutantOutcome* b) {
    return ordinal_of[a->mutant_id] < ordinal_of[b->mutant_id];
  });
  for (const MutantOutcome* o : rows) {
    std::vector<bool> row(matrix.test_ids.size(), false);
    for (const std::string& t : o->killing_tests) {
      auto it = col_of.find(t);
      if (it == col_of.end())
        throw AnalysisError("killing test '" + t + "' of mutant " + o->mutant_id +
                            " is not in the baseline inventory");
      row[it->second] = true;
    }
    matrix.mutant_ids.push_back(o->mutant_id);
    matrix.kills.push_back(std::move(row));
  }
  return matrix;
}

SubsumptionGraph dynamic_subsumption(const KillMatrix& matrix) {
  SubsumptionGraph graph;
  // group identical kill sets
  std::map<std::vector<bool>, std::vector<std::string>> groups;
  for (size_t r = 0; r < matrix.rows(); ++r)
    groups[matrix.kills[r]].push_back(matrix.mutant_ids[r]);

  for (auto& [killset, members] : groups) {
    std::sort(members.begin(), members.end());
    graph.classes.push_back(members);
    graph.representatives.push_back(members.front());
    graph.class_killsets.push_back(killset);
  }
  for (size_t a = 0; a < graph.classes.size(); ++a)
    for (size_t b = 0; b < graph.classes.size(); ++b) {
      if (a == b)
        continue;
      if (subset(graph.class_killsets[a], graph.class_killsets[b]))
        graph.edges.insert({a, b});
    }
  return graph;
}

std::set<std::string> subsuming_set(const SubsumptionGraph& graph) {
  std::set<std::string> out;
  for (size_t a = 0; a < graph.classes.size(); ++a) {
    bool subsumed = false;
    for (size_t b = 0; b < graph.classes.size(); ++b)
      if (b != a && graph.edges.count({b, a})) {
        subsumed = true;
        break;
      }
    if (!subsumed)
      out.insert(graph.representatives[a]);
  }
  return out;
}

ProjectSummary summarize(const std::string& name, const std::vector<Mutant>& mutants,
                         const std::vector<MutantOutcome>& outcomes,
                         const std::vector<std::string>& enabled_operator_ids,
                         const std::set<std::string>& suppressed_ids,
                         const std::set<std::string>& subsuming_ids) {
  ProjectSummary s;
  s.name = name;
  for (const std::string& op : enabled_operator_ids)
    s.per_operator[op] = StatusCounts{};
  s.per_family[OperatorFamily::Traditional] = StatusCounts{};
  s.per_family[OperatorFamily::NullType] = StatusCounts{};

  std::map<std::string, const Mutant*> by_id;
  for (const Mutant& m : mutants)
    by_id[m.id] = &m;

  auto bump = [](StatusCounts& c, MutantStatus st) {
    switch (st) {
    case MutantStatus::Killed: ++c.killed; break;
    case MutantStatus::Survived: ++c.survived; break;
    case MutantStatus::Stillborn: ++c.stillborn; break;
    case MutantStatus::Timeout: ++c.timeout; break;
    case MutantStatus::Stale: ++c.stale; break;
    }
  };

  std::map<OperatorFamily, size_t> killed_eff, survived_eff, timeout_eff;
  for (const MutantOutcome& o : outcomes) {
    auto it = by_id.find(o.mutant_id);
    if (it == by_id.end())
      throw AnalysisError("outcome for unknown mutant " + o.mutant_id);
    const Mutant& m = *it->second;
    if (suppressed_ids.count(o.mutant_id)) {
      ++s.suppressed;
      continue;
    }
    bump(s.overall, o.status);
    bump(s.per_operator[m.operator_id], o.status);
    bump(s.per_family[m.family], o.status);
    if (o.status == MutantStatus::Killed)
      ++killed_eff[m.family];
    else if (o.status == MutantStatus::Survived)
      ++survived_eff[m.family];
    else if (o.status == MutantStatus::Timeout)
      ++timeout_eff[m.family];
    if (subsuming_ids.count(o.mutant_id))
      ++s.subsuming_per_family[m.family];
  }

  auto coverage_of = [](size_t k, size_t t, size_t su) -> std::optional<double> {
    size_t denom = k + t + su;
    if (denom == 0)
      return std::nullopt;
    return static_cast<double>(k + t) / static_cast<double>(denom);
  };
  size_t k = s.overall.killed, t = s.overall.timeout, su = s.overall.survived;
  s.coverage_overall = coverage_of(k, t, su);
  for (OperatorFamily f : {OperatorFamily::Traditional, OperatorFamily::NullType}) {
    s.coverage_per_family[f] = coverage_of(killed_eff[f], timeout_eff[f], survived_eff[f]);
    if (killed_eff[f] > 0)
      s.skr_per_family[f] = static_cast<double>(survived_eff[f]) / killed_eff[f];
    else
      s.skr_per_family[f] = std::nullopt;
    if (!s.subsuming_per_family.count(f))
      s.subsuming_per_family[f] = 0;
  }
  return s;
}

SubsumptionDistribution subsumption_distribution(const std::vector<Mutant>& mutants,
                                                 const std::vector<MutantOutcome>& outcomes,
                                                 const std::set<std::string>& subsuming_ids,
                                                 const std::set<std::string>& suppressed_ids) {
  std::map<std::string, const Mutant*> by_id;
  for (const Mutant& m : mutants)
    by_id[m.id] = &m;

  auto tally = [&](auto predicate) {
    ShareTable table;
    std::map<OperatorFamily, size_t> fam;
    std::map<std::string, size_t> op;
    size_t total = 0;
    for (const MutantOutcome& o : outcomes) {
      if (suppressed_ids.count(o.mutant_id))
        continue;
      const Mutant& m = *by_id.at(o.mutant_id);
      if (!predicate(o))
        continue;
      ++fam[m.family];
      ++op[m.operator_id];
      ++total;
    }
    if (total == 0)
      return table;
    table.empty = false;
    for (auto& [f, n] : fam)
      table.by_family[f] = static_cast<double>(n) / total;
    for (auto& [o, n] : op)
      table.by_operator[o] = static_cast<double>(n) / total;
    return table;
  };

  SubsumptionDistribution dist;
  dist.all = tally([](const MutantOutcome& o) { return o.status != MutantStatus::Stale; });
  dist.killed = tally([](const MutantOutcome& o) {
    return o.status == MutantStatus::Killed || o.status == MutantStatus::Timeout;
  });
  dist.subsuming =
      tally([&](const MutantOutcome& o) { return subsuming_ids.count(o.mutant_id) != 0; });
  return dist;
}

Correlation pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw AnalysisError("pearson: size mismatch");
  size_t n = x.size();
  if (n < 3)
    throw AnalysisError("pearson: need at least 3 pairs, got " + std::to_string(n));
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  Correlation c;
  c.pairs_used = n;
  if (sxx == 0.0 || syy == 0.0) {
    c.degenerate = true;
    return c;
  }
  c.r = sxy / std::sqrt(sxx * syy);
  c.r_squared = c.r * c.r;
  return c;
}

Correlation skr_correlation(const std::vector<ProjectSummary>& projects) {
  std::vector<double> x, y;
  size_t excluded = 0;
  for (const ProjectSummary& p : projects) {
    auto tx = p.skr_per_family.count(OperatorFamily::Traditional)
                  ? p.skr_per_family.at(OperatorFamily::Traditional)
                  : std::nullopt;
    auto ty = p.skr_per_family.count(OperatorFamily::NullType)
                  ? p.skr_per_family.at(OperatorFamily::NullType)
                  : std::nullopt;
    if (!tx || !ty) {
      ++excluded;
      continue;
    }
    x.push_back(*tx);
    y.push_back(*ty);
  }
  if (x.size() < 3)
    throw AnalysisError("skr_correlation: fewer than 3 projects with defined SKR in both families");
  Correlation c = pearson(x, y);
  c.pairs_excluded = excluded;
  return c;
}

std::set<std::string> load_suppressions(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw std::runtime_error("cannot read suppression list " + file.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    // trim
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    size_t e = line.find_last_not_of(" \t\r");
    out.insert(line.substr(b, e - b + 1));
  }
  return out;
}

} // namespace nullforge
