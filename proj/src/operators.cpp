#include "nullforge/operators.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nullforge/hash.hpp"

namespace nullforge {

namespace {

std::optional<std::string> table_lookup(const std::map<std::string, std::string>& table,
                                        const MutationSite& site) {
  auto it = table.find(site.original);
  if (it == table.end())
    return std::nullopt;
  return it->second;
}

std::vector<MutationOperator> build_catalog() {
  std::vector<MutationOperator> ops;

  auto add_table = [&](std::string id, SiteKind kind, std::string desc,
                       std::map<std::string, std::string> table) {
    ops.push_back({std::move(id), OperatorFamily::Traditional, std::move(desc), kind,
                   [table = std::move(table)](const MutationSite& s) {
                     return table_lookup(table, s);
                   }});
  };

  add_table("ArithmeticOperatorReplacementBinary", SiteKind::BinaryArith,
            "Replaces a binary arithmetic operator",
            {{"+", "-"}, {"-", "+"}, {"*", "/"}, {"/", "*"}, {"%", "*"}});
  ops.push_back({"ArithmeticOperatorReplacementUnary", OperatorFamily::Traditional,
                 "Removes a unary plus or minus", SiteKind::UnaryArith,
                 [](const MutationSite&) { return std::optional<std::string>(""); }});
  add_table("ArithmeticOperatorReplacementShortcut", SiteKind::ShortcutArith,
            "Swaps increment and decrement", {{"++", "--"}, {"--", "++"}});
  add_table("LogicalOperatorReplacement", SiteKind::Logical,
            "Replaces a bitwise/logical operator", {{"&", "|"}, {"|", "&"}, {"^", "&"}});
  add_table("ShiftOperatorReplacement", SiteKind::Shift, "Replaces a shift operator",
            {{"<<", ">>"}, {">>", "<<"}, {">>>", ">>"}});
  add_table("RelationalOperatorReplacement", SiteKind::Relational,
            "Replaces a relational operator",
            {{"<", ">="}, {">", "<="}, {"<=", ">"}, {">=", "<"}, {"==", "!="}, {"!=", "=="}});
  add_table("ConditionalOperatorReplacement", SiteKind::Conditional,
            "Swaps conditional and/or", {{"&&", "||"}, {"||", "&&"}});

  ops.push_back({"NullifyReturnValue", OperatorFamily::NullType,
                 "Replaces a returned object with null", SiteKind::ReturnStmt,
                 [](const MutationSite&) { return std::optional<std::string>("return null;"); }});
  ops.push_back({"NullifyInputVariable", OperatorFamily::NullType,
                 "Replaces a received object reference with null", SiteKind::MethodParam,
                 [](const MutationSite& s) {
                   if (s.payload.empty())
                     return std::optional<std::string>();
                   return std::optional<std::string>(" " + s.payload + " = null;");
                 }});
  ops.push_back({"NullifyObjectInitialization", OperatorFamily::NullType,
                 "Replaces a new expression with null", SiteKind::NewExpr,
                 [](const MutationSite&) { return std::optional<std::string>("null"); }});
  ops.push_back({"NegateNullCheck", OperatorFamily::NullType,
                 "Negates a null comparison", SiteKind::NullCheck,
                 [](const MutationSite& s) {
                   if (s.original == "==")
                     return std::optional<std::string>("!=");
                   if (s.original == "!=")
                     return std::optional<std::string>("==");
                   return std::optional<std::string>();
                 }});
  return ops;
}

} // namespace

std::string to_string(OperatorFamily family) {
  return family == OperatorFamily::Traditional ? "traditional" : "null-type";
}

const std::vector<MutationOperator>& operator_catalog() {
  static const std::vector<MutationOperator> catalog = build_catalog();
  return catalog;
}

const MutationOperator& operator_by_id(const std::string& id) {
  for (const auto& op : operator_catalog())
    if (op.id == id)
      return op;
  std::ostringstream msg;
  msg << "unknown operator '" << id << "'; valid ids:";
  for (const auto& op : operator_catalog())
    msg << " " << op.id;
  throw std::invalid_argument(msg.str());
}

std::vector<MutationOperator> enumerate_operators(const std::vector<std::string>& selection) {
  std::vector<MutationOperator> out;
  auto add_family = [&](OperatorFamily family) {
    for (const auto& op : operator_catalog())
      if (op.family == family)
        out.push_back(op);
  };
  for (const auto& sel : selection) {
    if (sel == "all") {
      for (const auto& op : operator_catalog())
        out.push_back(op);
    } else if (sel == "traditional") {
      add_family(OperatorFamily::Traditional);
    } else if (sel == "null-type") {
      add_family(OperatorFamily::NullType);
    } else {
      out.push_back(operator_by_id(sel));
    }
  }
  // de-duplicate, preserving catalog order
  std::vector<MutationOperator> unique;
  for (const auto& op : operator_catalog())
    if (std::any_of(out.begin(), out.end(),
                    [&](const MutationOperator& o) { return o.id == op.id; }))
      unique.push_back(op);
  return unique;
}

std::vector<Mutant> generate_mutants(const std::vector<MutationSite>& sites) {
  std::vector<Mutant> mutants;
  for (const MutationSite& site : sites) {
    const MutationOperator& op = operator_by_id(site.operator_id);
    auto replacement = op.replace(site);
    if (!replacement || *replacement == site.original)
      continue;
    Mutant m;
    m.operator_id = op.id;
    m.family = op.family;
    m.file_path = site.file_path;
    m.line = site.line;
    m.column = site.column;
    m.begin = site.begin;
    m.end = site.end;
    m.original = site.original;
    m.replacement = *replacement;
    std::string key = m.file_path + '\0' + m.operator_id + '\0' + std::to_string(m.begin) + ':' +
                      std::to_string(m.end) + '\0' + m.replacement;
    m.id = to_hex16(fnv1a64(key));
    mutants.push_back(std::move(m));
  }
  std::sort(mutants.begin(), mutants.end(), [](const Mutant& a, const Mutant& b) {
    if (a.file_path != b.file_path)
      return a.file_path < b.file_path;
    if (a.begin != b.begin)
      return a.begin < b.begin;
    return a.operator_id < b.operator_id;
  });
  for (size_t i = 0; i < mutants.size(); ++i)
    mutants[i].ordinal = i;
  return mutants;
}

std::string apply_mutant(const std::string& original_text, const Mutant& mutant) {
  if (mutant.end > original_text.size() ||
      original_text.compare(mutant.begin, mutant.end - mutant.begin, mutant.original) != 0)
    throw StaleMutantError("mutant " + mutant.id + " is stale: snippet mismatch in " +
                           mutant.file_path);
  std::string out;
  out.reserve(original_text.size() + mutant.replacement.size());
  out.append(original_text, 0, mutant.begin);
  out.append(mutant.replacement);
  out.append(original_text, mutant.end, std::string::npos);
  return out;
}

} // namespace nullforge
