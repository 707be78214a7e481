#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullforge/harness.hpp"
#include "nullforge/operators.hpp"

namespace nullforge {

/// Mutants x tests boolean kill relation, restricted to killed mutants with
/// resolved kill sets. Tests are the full baseline inventory.
struct KillMatrix {
  std::vector<std::string> mutant_ids; // row order: mutant ordinal
  std::vector<std::string> test_ids;   // column order: test id ascending
  std::vector<std::vector<bool>> kills; // kills[row][col]

  const std::vector<bool>& row(size_t r) const { return kills[r]; }
  size_t rows() const { return mutant_ids.size(); }
  size_t cols() const { return test_ids.size(); }
};

/// Dynamic subsumption over the kill matrix. Mutants with identical kill
/// sets collapse into one class; the representative is the
/// lexicographically smallest mutant id.
struct SubsumptionGraph {
  std::vector<std::vector<std::string>> classes; // members sorted; index = class id
  std::vector<std::string> representatives;      // one per class
  // edge (a, b): class a dynamically subsumes class b (killset(a) subset of killset(b)).
  // Reflexive pairs are omitted; same-class subsumption is implied.
  std::set<std::pair<size_t, size_t>> edges;
  std::vector<std::vector<bool>> class_killsets; // per class, over matrix test columns
};

struct StatusCounts {
  size_t killed = 0;
  size_t survived = 0;
  size_t stillborn = 0;
  size_t timeout = 0;
  size_t stale = 0;

  size_t total() const { return killed + survived + stillborn + timeout + stale; }
};

struct ProjectSummary {
  std::string name;
  StatusCounts overall;
  std::map<std::string, StatusCounts> per_operator; // zero-filled for enabled operators
  std::map<OperatorFamily, StatusCounts> per_family;
  std::optional<double> coverage_overall;
  std::map<OperatorFamily, std::optional<double>> coverage_per_family;
  std::map<OperatorFamily, std::optional<double>> skr_per_family; // survived / killed
  std::map<OperatorFamily, size_t> subsuming_per_family;
  size_t suppressed = 0;
};

struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mutation coverage = (killed + timeout) / (killed + timeout + survived)
/// over non-suppressed, non-stillborn mutants. Throws AnalysisError when the
/// denominator is empty.
double mutation_coverage(const std::vector<Mutant>& mutants,
                         const std::vector<MutantOutcome>& outcomes,
                         const std::set<std::string>& suppressed_ids);

/// Plain count-based variant used for desk-scale checks.
double mutation_coverage_counts(size_t killed, size_t survived, size_t suppressed_survivors,
                                size_t timeout = 0);

/// Throws AnalysisError when a killing test is absent from the baseline
/// inventory.
KillMatrix build_kill_matrix(const std::vector<Mutant>& mutants,
                             const std::vector<MutantOutcome>& outcomes,
                             const std::vector<std::string>& baseline_tests);

SubsumptionGraph dynamic_subsumption(const KillMatrix& matrix);

/// Representatives of minimal classes in the condensation order: no other
/// class strictly subsumes them.
std::set<std::string> subsuming_set(const SubsumptionGraph& graph);

/// Per-operator status table (zero-filled rows for enabled-but-unused
/// operators) plus family subtotals.
ProjectSummary summarize(const std::string& name,
                         const std::vector<Mutant>& mutants,
                         const std::vector<MutantOutcome>& outcomes,
                         const std::vector<std::string>& enabled_operator_ids,
                         const std::set<std::string>& suppressed_ids,
                         const std::set<std::string>& subsuming_ids = {});

struct ShareTable {
  bool empty = true;
  std::map<OperatorFamily, double> by_family;   // sums to 1 when non-empty
  std::map<std::string, double> by_operator;    // sums to 1 when non-empty
};

struct SubsumptionDistribution {
  ShareTable all;
  ShareTable killed;
  ShareTable subsuming;
};

SubsumptionDistribution subsumption_distribution(const std::vector<Mutant>& mutants,
                                                 const std::vector<MutantOutcome>& outcomes,
                                                 const std::set<std::string>& subsuming_ids,
                                                 const std::set<std::string>& suppressed_ids);

struct Correlation {
  double r = 0.0;
  double r_squared = 0.0;
  bool degenerate = false; // one side constant: r undefined
  size_t pairs_used = 0;
  size_t pairs_excluded = 0; // undefined SKR on either side
};

/// Pearson correlation of (traditional SKR, null-type SKR) pairs across
/// projects. Throws AnalysisError with fewer than 3 valid pairs.
Correlation skr_correlation(const std::vector<ProjectSummary>& projects);

/// Raw-pair variant (x = traditional SKR, y = null-type SKR).
Correlation pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Reads a suppression list: one mutant id per line, '#' comments and blank
/// lines ignored.
std::set<std::string> load_suppressions(const std::filesystem::path& file);

} // namespace nullforge
