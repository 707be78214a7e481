#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nullforge {

/// One production source file, held immutably for the whole run.
struct SourceFile {
  std::string path; // project-relative, '/'-separated
  std::string text; // full UTF-8 contents
  std::vector<size_t> line_starts; // byte offset of each line start; [0] == 0

  static SourceFile from_text(std::string path, std::string text);

  /// 1-based (line, column) of a byte offset.
  std::pair<int, int> line_col(size_t offset) const;
};

enum class SiteKind {
  BinaryArith,
  UnaryArith,
  ShortcutArith,
  Logical,
  Shift,
  Relational,
  Conditional,
  ReturnStmt,
  MethodParam,
  NewExpr,
  NullCheck,
};

std::string to_string(SiteKind kind);

struct MutationSite {
  std::string file_path;
  std::string operator_id;
  size_t begin = 0; // byte span [begin, end) to replace
  size_t end = 0;
  int line = 1; // 1-based position of span start
  int column = 1;
  std::string original; // exact file text at the span
  SiteKind kind = SiteKind::BinaryArith;
  std::string payload; // extra site data (e.g. parameter name for method-param sites)
};

struct Parameter {
  std::string name;
  std::string type; // declared type token(s), as written
  bool is_final = false;
};

struct MethodContext {
  std::string file_path;
  std::string name;
  std::optional<std::string> return_type; // absent for constructors
  std::vector<Parameter> params;
  size_t body_begin = 0; // byte span of the body, '{' .. '}' inclusive
  size_t body_end = 0;
  size_t insert_offset = 0; // first-statement insertion point (after super()/this() in ctors)
  bool is_constructor = false;
  bool has_body = false; // false for abstract/interface stubs
};

/// Lexical token over masked source; comments and string/char literals never
/// contribute operator tokens.
struct Token {
  enum class Kind { Identifier, Keyword, Number, String, Char, Punct };
  Kind kind;
  size_t begin = 0;
  size_t end = 0;
  std::string text;
  bool in_generic_args = false; // inside a masked <...> type-argument region
};

struct ParseError {
  std::string file_path;
  int line = 0;
  std::string message;
};

struct ParsedFile {
  SourceFile file;
  std::vector<Token> tokens;
  std::vector<MethodContext> methods;
  std::vector<std::pair<size_t, size_t>> masks; // comment/literal byte spans
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

struct ScanResult {
  std::vector<SourceFile> files; // sorted by path ascending
  std::vector<std::string> skipped; // files skipped with a warning (e.g. invalid UTF-8)
};

/// Default patterns keeping test sources out of the mutated set.
const std::vector<std::string>& default_exclude_globs();

/// Walks `root` and loads every `.java` file matching include minus exclude.
/// Throws std::runtime_error when root is missing or unreadable.
ScanResult scan_project(const std::filesystem::path& root,
                        const std::vector<std::string>& include_globs = {"**/*.java"},
                        const std::vector<std::string>& exclude_globs = default_exclude_globs());

/// Restricted-grammar parse: methods/constructors with body spans, token
/// stream with comments and literals masked. Parse problems are recorded in
/// `errors`; such a file contributes no sites.
ParsedFile parse_source(SourceFile file);

/// True when a declared type token names a reference type under the lexical
/// rule: array-suffixed types are references, otherwise the base token must
/// not be a primitive or void.
bool is_reference_type(std::string_view declared_type);

/// Locates all mutation sites for the enabled operator identifiers.
/// Sites are sorted by (byte offset, operator id).
std::vector<MutationSite> locate_sites(const ParsedFile& parsed,
                                       const std::vector<std::string>& enabled_operator_ids);

} // namespace nullforge
