#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullforge/source_model.hpp"

namespace nullforge {

enum class OperatorFamily { Traditional, NullType };

std::string to_string(OperatorFamily family);

struct MutationOperator {
  std::string id; // stable identifier, e.g. "NullifyReturnValue"
  OperatorFamily family;
  std::string description;
  SiteKind site_kind;
  // Replacement text for a site, or nullopt when the site yields no mutant.
  std::function<std::optional<std::string>(const MutationSite&)> replace;
};

struct Mutant {
  std::string id; // content hash, 16 hex chars
  uint64_t ordinal = 0; // deterministic sequence number within the run
  std::string operator_id;
  OperatorFamily family = OperatorFamily::Traditional;
  std::string file_path;
  int line = 1;
  int column = 1;
  size_t begin = 0;
  size_t end = 0;
  std::string original;
  std::string replacement;
};

/// Operator selection: a family name ("traditional", "null-type", "all") or
/// an explicit comma-free list of operator identifiers.
/// Throws std::invalid_argument listing valid ids on an unknown identifier.
std::vector<MutationOperator> enumerate_operators(const std::vector<std::string>& selection);

/// The full catalog (7 traditional + 4 null-type).
const std::vector<MutationOperator>& operator_catalog();

const MutationOperator& operator_by_id(const std::string& id);

/// Turns sites into mutants: applies each operator's replacement rule, drops
/// identity replacements, sorts by (file, begin, operator id) and assigns
/// ordinals. Deterministic for identical inputs.
std::vector<Mutant> generate_mutants(const std::vector<MutationSite>& sites);

/// Applies the single-change patch. Throws StaleMutantError when the file
/// text no longer carries the original snippet at the mutant's span.
std::string apply_mutant(const std::string& original_text, const Mutant& mutant);

struct StaleMutantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace nullforge
