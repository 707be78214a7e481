#include "nullforge/source_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nullforge/glob.hpp"

namespace fs = std::filesystem;

namespace nullforge {

namespace {

const std::set<std::string>& java_keywords() {
  static const std::set<std::string> kw = {
      "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
      "const", "continue", "default", "do", "double", "else", "enum", "extends", "final",
      "finally", "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
      "interface", "long", "native", "new", "package", "private", "protected", "public",
      "record", "return", "short", "static", "strictfp", "super", "switch", "synchronized",
      "this", "throw", "throws", "transient", "try", "var", "void", "volatile", "while",
      "true", "false", "null"};
  return kw;
}

const std::set<std::string>& primitive_types() {
  static const std::set<std::string> p = {"boolean", "byte", "char", "short",
                                          "int",     "long", "float", "double", "void"};
  return p;
}

const std::set<std::string>& modifier_keywords() {
  static const std::set<std::string> m = {"public",   "private",      "protected", "static",
                                          "final",    "abstract",     "native",    "synchronized",
                                          "strictfp", "default",      "transient", "volatile"};
  return m;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool valid_utf8(const std::string& text) {
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    size_t extra = 0;
    if (c < 0x80)
      extra = 0;
    else if ((c & 0xE0) == 0xC0)
      extra = 1;
    else if ((c & 0xF0) == 0xE0)
      extra = 2;
    else if ((c & 0xF8) == 0xF0)
      extra = 3;
    else
      return false;
    if (i + extra >= text.size() && extra > 0)
      return false;
    for (size_t k = 1; k <= extra; ++k)
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80)
        return false;
    i += extra + 1;
  }
  return true;
}

struct Lexer {
  const std::string& text;
  std::vector<Token> tokens;
  std::vector<std::pair<size_t, size_t>> masks;
  std::vector<ParseError> errors;
  const std::string& path;
  const SourceFile& file;

  Lexer(const SourceFile& f) : text(f.text), path(f.path), file(f) {}

  void error_at(size_t offset, const std::string& msg) {
    errors.push_back({path, file.line_col(offset).first, msg});
  }

  void run() {
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '/' && i + 1 < n && text[i + 1] == '/') {
        size_t end = text.find('\n', i);
        if (end == std::string::npos)
          end = n;
        masks.emplace_back(i, end);
        i = end;
        continue;
      }
      if (c == '/' && i + 1 < n && text[i + 1] == '*') {
        size_t end = text.find("*/", i + 2);
        if (end == std::string::npos) {
          error_at(i, "unterminated block comment");
          masks.emplace_back(i, n);
          return;
        }
        masks.emplace_back(i, end + 2);
        i = end + 2;
        continue;
      }
      if (c == '"') {
        size_t start = i++;
        bool closed = false;
        while (i < n) {
          if (text[i] == '\\') {
            i += 2;
            continue;
          }
          if (text[i] == '"') {
            ++i;
            closed = true;
            break;
          }
          if (text[i] == '\n')
            break;
          ++i;
        }
        if (!closed) {
          error_at(start, "unterminated string literal");
          return;
        }
        push(Token::Kind::String, start, i);
        masks.emplace_back(start, i);
        continue;
      }
      if (c == '\'') {
        size_t start = i++;
        bool closed = false;
        while (i < n) {
          if (text[i] == '\\') {
            i += 2;
            continue;
          }
          if (text[i] == '\'') {
            ++i;
            closed = true;
            break;
          }
          if (text[i] == '\n')
            break;
          ++i;
        }
        if (!closed) {
          error_at(start, "unterminated char literal");
          return;
        }
        push(Token::Kind::Char, start, i);
        masks.emplace_back(start, i);
        continue;
      }
      if (is_ident_start(c)) {
        size_t start = i;
        while (i < n && is_ident_char(text[i]))
          ++i;
        std::string word = text.substr(start, i - start);
        push(java_keywords().count(word) ? Token::Kind::Keyword : Token::Kind::Identifier, start, i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
        size_t start = i;
        ++i;
        while (i < n && (is_ident_char(text[i]) || text[i] == '.' ||
                         ((text[i] == '+' || text[i] == '-') && (text[i - 1] == 'e' || text[i - 1] == 'E'))))
          ++i;
        // a trailing '.' belongs to the next token unless followed by a digit
        if (text[i - 1] == '.' && (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))))
          --i;
        push(Token::Kind::Number, start, i);
        continue;
      }
      // punctuation, longest match first
      static const std::array<const char*, 26> multi = {
          ">>>=", ">>>", ">>=", ">>", "<<=", "<<", "<=", ">=", "==", "!=", "&&", "||",
          "++",   "--",  "+=",  "-=", "*=",  "/=", "%=", "&=", "|=", "^=", "->", "::",
          "...",  "@"};
      size_t len = 1;
      for (const char* m : multi) {
        size_t ml = std::strlen(m);
        if (text.compare(i, ml, m) == 0 && ml > len) {
          len = ml;
          break;
        }
      }
      push(Token::Kind::Punct, i, i + len);
      i += len;
    }
  }

  void push(Token::Kind kind, size_t begin, size_t end) {
    tokens.push_back({kind, begin, end, text.substr(begin, end - begin), false});
  }
};

int shift_closes(const std::string& t) {
  if (t == ">")
    return 1;
  if (t == ">>")
    return 2;
  if (t == ">>>")
    return 3;
  return 0;
}

/// Marks type-argument regions like List<Foo> so '<', '>' and '>>' inside
/// them never become relational or shift sites.
void mark_generic_regions(std::vector<Token>& tokens) {
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].text != "<" || tokens[i].in_generic_args)
      continue;
    if (i == 0 || tokens[i - 1].kind != Token::Kind::Identifier)
      continue;
    int depth = 0;
    size_t j = i;
    bool ok = false;
    for (; j < tokens.size(); ++j) {
      const Token& t = tokens[j];
      if (t.text == "<") {
        ++depth;
        continue;
      }
      if (int c = shift_closes(t.text)) {
        depth -= c;
        if (depth < 0)
          break;
        if (depth == 0) {
          ok = true;
          break;
        }
        continue;
      }
      if (t.kind == Token::Kind::Identifier || t.text == "." || t.text == "," || t.text == "?" ||
          t.text == "extends" || t.text == "super" || t.text == "[" || t.text == "]" ||
          t.text == "&" || primitive_types().count(t.text))
        continue;
      break;
    }
    if (!ok)
      continue;
    // require a type-ish continuation to rule out genuine comparisons
    if (j + 1 < tokens.size()) {
      const Token& next = tokens[j + 1];
      bool plausible = next.kind == Token::Kind::Identifier || next.text == "(" ||
                       next.text == ")" || next.text == "." || next.text == "::" ||
                       next.text == "{" || next.text == ">" || next.text == "[" ||
                       next.text == ",";
      if (!plausible)
        continue;
    }
    for (size_t k = i; k <= j; ++k)
      tokens[k].in_generic_args = true;
  }
}

size_t skip_balanced(const std::vector<Token>& tokens, size_t open_idx,
                     const std::string& open, const std::string& close) {
  int depth = 0;
  for (size_t i = open_idx; i < tokens.size(); ++i) {
    if (tokens[i].text == open)
      ++depth;
    else if (tokens[i].text == close) {
      --depth;
      if (depth == 0)
        return i;
    }
  }
  return tokens.size();
}

struct MemberParser {
  const SourceFile& file;
  const std::vector<Token>& tokens;
  std::vector<MethodContext>& methods;
  std::vector<ParseError>& errors;

  void parse() { parse_scope(0, tokens.size(), ""); }

  // Walks [begin, end) looking for type declarations; members are parsed
  // within each type body.
  void parse_scope(size_t begin, size_t end, const std::string& enclosing) {
    for (size_t i = begin; i < end; ++i) {
      const std::string& t = tokens[i].text;
      if (t == "class" || t == "interface" || t == "enum" || t == "record") {
        size_t name_idx = i + 1;
        if (name_idx >= end || tokens[name_idx].kind != Token::Kind::Identifier) {
          errors.push_back({file.path, file.line_col(tokens[i].begin).first,
                            "expected type name after '" + t + "'"});
          return;
        }
        size_t brace = name_idx;
        while (brace < end && tokens[brace].text != "{" && tokens[brace].text != ";")
          ++brace;
        if (brace >= end || tokens[brace].text == ";")
          continue; // forward-ish declaration, nothing to do
        size_t close = skip_balanced(tokens, brace, "{", "}");
        if (close >= end) {
          errors.push_back({file.path, file.line_col(tokens[brace].begin).first,
                            "unbalanced braces in type body"});
          return;
        }
        parse_type_body(brace + 1, close, tokens[name_idx].text);
        i = close;
      }
    }
  }

  void parse_type_body(size_t begin, size_t end, const std::string& type_name) {
    size_t i = begin;
    while (i < end) {
      i = parse_member(i, end, type_name);
    }
  }

  // Parses one member starting at `i`; returns the index just past it.
  size_t parse_member(size_t i, size_t end, const std::string& type_name) {
    // skip stray semicolons and annotations
    while (i < end && tokens[i].text == ";")
      ++i;
    if (i >= end)
      return end;
    while (i < end && tokens[i].text == "@") {
      i += 2; // '@' Name
      if (i < end && tokens[i].text == "(")
        i = skip_balanced(tokens, i, "(", ")") + 1;
    }
    if (i >= end)
      return end;
    // nested type
    const std::string& first = tokens[i].text;
    if (first == "class" || first == "interface" || first == "enum" || first == "record") {
      size_t brace = i;
      while (brace < end && tokens[brace].text != "{")
        ++brace;
      if (brace >= end)
        return end;
      size_t close = skip_balanced(tokens, brace, "{", "}");
      if (close >= end)
        return end;
      if (i + 1 < end && tokens[i + 1].kind == Token::Kind::Identifier)
        parse_type_body(brace + 1, close, tokens[i + 1].text);
      return close + 1;
    }
    // static / instance initializer block
    if (first == "{" || (first == "static" && i + 1 < end && tokens[i + 1].text == "{")) {
      size_t brace = first == "{" ? i : i + 1;
      size_t close = skip_balanced(tokens, brace, "{", "}");
      return close >= end ? end : close + 1;
    }

    size_t decl_start = i;
    while (i < end && modifier_keywords().count(tokens[i].text)) {
      ++i;
      // annotations between modifiers
      while (i < end && tokens[i].text == "@") {
        i += 2;
        if (i < end && tokens[i].text == "(")
          i = skip_balanced(tokens, i, "(", ")") + 1;
      }
    }
    if (i < end && (tokens[i].text == "class" || tokens[i].text == "interface" ||
                    tokens[i].text == "enum" || tokens[i].text == "record"))
      return parse_member_nested_type(i, end);

    // find the decisive token: '(' means method/ctor, '=' or ';' means field
    size_t probe = i;
    while (probe < end) {
      const std::string& t = tokens[probe].text;
      if (tokens[probe].in_generic_args) {
        ++probe;
        continue;
      }
      if (t == "(" || t == "=" || t == ";")
        break;
      if (t == "{") // lost track; treat as opaque block
        return skip_balanced(tokens, probe, "{", "}") + 1;
      ++probe;
    }
    if (probe >= end)
      return end;
    if (tokens[probe].text == "=" || tokens[probe].text == ";")
      return skip_field(probe, end);

    size_t paren = probe;
    size_t name_idx = paren - 1;
    if (tokens[name_idx].kind != Token::Kind::Identifier) {
      errors.push_back({file.path, file.line_col(tokens[paren].begin).first,
                        "expected member name before '('"});
      return skip_to_member_end(paren, end);
    }

    MethodContext ctx;
    ctx.file_path = file.path;
    ctx.name = tokens[name_idx].text;
    bool has_type_tokens = name_idx > i;
    ctx.is_constructor = !has_type_tokens && ctx.name == type_name;
    if (!ctx.is_constructor) {
      std::string rt;
      for (size_t k = i; k < name_idx; ++k)
        rt += tokens[k].text;
      ctx.return_type = rt;
    }

    size_t close_paren = skip_balanced(tokens, paren, "(", ")");
    if (close_paren >= end) {
      errors.push_back({file.path, file.line_col(tokens[paren].begin).first,
                        "unbalanced parameter list"});
      return end;
    }
    parse_params(paren + 1, close_paren, ctx);

    size_t after = close_paren + 1;
    while (after < end && tokens[after].text != "{" && tokens[after].text != ";")
      ++after;
    if (after >= end)
      return end;
    if (tokens[after].text == ";") {
      ctx.has_body = false;
      methods.push_back(std::move(ctx));
      return after + 1;
    }
    size_t body_close = skip_balanced(tokens, after, "{", "}");
    if (body_close >= end) {
      errors.push_back({file.path, file.line_col(tokens[after].begin).first,
                        "unbalanced method body"});
      return end;
    }
    ctx.has_body = true;
    ctx.body_begin = tokens[after].begin;
    ctx.body_end = tokens[body_close].end;
    ctx.insert_offset = tokens[after].end;
    if (ctx.is_constructor && after + 1 < body_close &&
        (tokens[after + 1].text == "super" || tokens[after + 1].text == "this") &&
        after + 2 < body_close && tokens[after + 2].text == "(") {
      size_t call_close = skip_balanced(tokens, after + 2, "(", ")");
      if (call_close + 1 < body_close && tokens[call_close + 1].text == ";")
        ctx.insert_offset = tokens[call_close + 1].end;
    }
    methods.push_back(std::move(ctx));
    (void)decl_start;
    return body_close + 1;
  }

  size_t parse_member_nested_type(size_t i, size_t end) {
    size_t brace = i;
    while (brace < end && tokens[brace].text != "{")
      ++brace;
    if (brace >= end)
      return end;
    size_t close = skip_balanced(tokens, brace, "{", "}");
    if (close >= end)
      return end;
    if (i + 1 < end && tokens[i + 1].kind == Token::Kind::Identifier)
      parse_type_body(brace + 1, close, tokens[i + 1].text);
    return close + 1;
  }

  // Skips a field declaration to its terminating ';', balancing any braces
  // (array initializers, lambdas) in the initializer.
  size_t skip_field(size_t from, size_t end) {
    size_t i = from;
    while (i < end) {
      const std::string& t = tokens[i].text;
      if (t == ";")
        return i + 1;
      if (t == "{")
        i = skip_balanced(tokens, i, "{", "}");
      else if (t == "(")
        i = skip_balanced(tokens, i, "(", ")");
      ++i;
    }
    return end;
  }

  size_t skip_to_member_end(size_t from, size_t end) {
    for (size_t i = from; i < end; ++i) {
      if (tokens[i].text == ";")
        return i + 1;
      if (tokens[i].text == "{")
        return skip_balanced(tokens, i, "{", "}") + 1;
    }
    return end;
  }

  void parse_params(size_t begin, size_t end, MethodContext& ctx) {
    size_t i = begin;
    while (i < end) {
      size_t item_end = i;
      int depth = 0;
      while (item_end < end) {
        const std::string& t = tokens[item_end].text;
        if (t == "(" || t == "[")
          ++depth;
        else if (t == ")" || t == "]")
          --depth;
        else if (t == "," && depth == 0 && !tokens[item_end].in_generic_args)
          break;
        ++item_end;
      }
      if (item_end > i)
        parse_one_param(i, item_end, ctx);
      i = item_end + 1;
    }
  }

  void parse_one_param(size_t begin, size_t end, MethodContext& ctx) {
    Parameter p;
    size_t i = begin;
    while (i < end) {
      if (tokens[i].text == "@") {
        i += 2;
        if (i < end && tokens[i].text == "(")
          i = skip_balanced(tokens, i, "(", ")") + 1;
        continue;
      }
      if (tokens[i].text == "final") {
        p.is_final = true;
        ++i;
        continue;
      }
      break;
    }
    if (i >= end)
      return;
    // the last identifier is the name, everything before is the type
    size_t name_idx = end - 1;
    while (name_idx > i && tokens[name_idx].kind != Token::Kind::Identifier)
      --name_idx;
    if (tokens[name_idx].kind != Token::Kind::Identifier)
      return;
    p.name = tokens[name_idx].text;
    for (size_t k = i; k < name_idx; ++k)
      p.type += tokens[k].text;
    // trailing array brackets after the name: int x[]
    for (size_t k = name_idx + 1; k < end; ++k)
      p.type += tokens[k].text;
    if (p.type.empty())
      return; // lambda-style implicit parameter; ignored
    ctx.params.push_back(std::move(p));
  }
};

std::string strip_generics(std::string_view type) {
  std::string out;
  int depth = 0;
  for (char c : type) {
    if (c == '<') {
      ++depth;
      continue;
    }
    if (c == '>') {
      --depth;
      continue;
    }
    if (depth == 0)
      out += c;
  }
  return out;
}

} // namespace

SourceFile SourceFile::from_text(std::string path, std::string text) {
  SourceFile f;
  f.path = std::move(path);
  f.text = std::move(text);
  f.line_starts.push_back(0);
  for (size_t i = 0; i < f.text.size(); ++i)
    if (f.text[i] == '\n')
      f.line_starts.push_back(i + 1);
  return f;
}

std::pair<int, int> SourceFile::line_col(size_t offset) const {
  auto it = std::upper_bound(line_starts.begin(), line_starts.end(), offset);
  size_t line = static_cast<size_t>(it - line_starts.begin());
  size_t start = line_starts[line - 1];
  return {static_cast<int>(line), static_cast<int>(offset - start + 1)};
}

std::string to_string(SiteKind kind) {
  switch (kind) {
  case SiteKind::BinaryArith: return "binary-arith";
  case SiteKind::UnaryArith: return "unary-arith";
  case SiteKind::ShortcutArith: return "shortcut-arith";
  case SiteKind::Logical: return "logical";
  case SiteKind::Shift: return "shift";
  case SiteKind::Relational: return "relational";
  case SiteKind::Conditional: return "conditional";
  case SiteKind::ReturnStmt: return "return-stmt";
  case SiteKind::MethodParam: return "method-param";
  case SiteKind::NewExpr: return "new-expr";
  case SiteKind::NullCheck: return "null-check";
  }
  return "unknown";
}

const std::vector<std::string>& default_exclude_globs() {
  static const std::vector<std::string> globs = {"**/src/test/**", "**/test/**"};
  return globs;
}

ScanResult scan_project(const fs::path& root, const std::vector<std::string>& include_globs,
                        const std::vector<std::string>& exclude_globs) {
  std::error_code ec;
  if (!fs::exists(root, ec) || !fs::is_directory(root, ec))
    throw std::runtime_error("project root not readable: " + root.string());

  ScanResult result;
  std::vector<std::string> rel_paths;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec)
      throw std::runtime_error("error walking " + root.string() + ": " + ec.message());
    if (!it->is_regular_file())
      continue;
    fs::path rel = fs::relative(it->path(), root);
    std::string rel_str = rel.generic_string();
    if (rel.extension() != ".java")
      continue;
    if (!glob_match_any(include_globs, rel_str))
      continue;
    if (glob_match_any(exclude_globs, rel_str))
      continue;
    rel_paths.push_back(rel_str);
  }
  std::sort(rel_paths.begin(), rel_paths.end());
  for (const auto& rel : rel_paths) {
    std::ifstream in(root / rel, std::ios::binary);
    if (!in) {
      result.skipped.push_back(rel + ": unreadable");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!valid_utf8(text)) {
      result.skipped.push_back(rel + ": invalid UTF-8, skipped");
      continue;
    }
    result.files.push_back(SourceFile::from_text(rel, std::move(text)));
  }
  return result;
}

ParsedFile parse_source(SourceFile file) {
  ParsedFile parsed;
  parsed.file = std::move(file);
  Lexer lexer(parsed.file);
  lexer.run();
  parsed.tokens = std::move(lexer.tokens);
  parsed.masks = std::move(lexer.masks);
  parsed.errors = std::move(lexer.errors);
  if (!parsed.errors.empty())
    return parsed;
  mark_generic_regions(parsed.tokens);
  MemberParser mp{parsed.file, parsed.tokens, parsed.methods, parsed.errors};
  mp.parse();
  return parsed;
}

bool is_reference_type(std::string_view declared_type) {
  std::string base = strip_generics(declared_type);
  if (base.find("[]") != std::string::npos || base.find("...") != std::string::npos)
    return true; // arrays (and varargs) are reference values
  // strip whitespace
  std::string clean;
  for (char c : base)
    if (!std::isspace(static_cast<unsigned char>(c)))
      clean += c;
  return !primitive_types().count(clean);
}

namespace {

struct SiteCollector {
  const ParsedFile& parsed;
  const std::set<std::string>& enabled;
  std::vector<MutationSite> sites;

  bool want(const std::string& op) const { return enabled.count(op) != 0; }

  void add(const std::string& op, SiteKind kind, size_t begin, size_t end,
           std::string payload = {}) {
    MutationSite s;
    s.file_path = parsed.file.path;
    s.operator_id = op;
    s.begin = begin;
    s.end = end;
    auto lc = parsed.file.line_col(begin);
    s.line = lc.first;
    s.column = lc.second;
    s.original = parsed.file.text.substr(begin, end - begin);
    s.kind = kind;
    s.payload = std::move(payload);
    sites.push_back(std::move(s));
  }

  static bool ends_operand(const Token& t) {
    if (t.kind == Token::Kind::Identifier || t.kind == Token::Kind::Number ||
        t.kind == Token::Kind::String || t.kind == Token::Kind::Char)
      return true;
    return t.text == ")" || t.text == "]" || t.text == "this" || t.text == "super" ||
           t.text == "null" || t.text == "true" || t.text == "false";
  }

  void collect_token_sites() {
    const auto& tokens = parsed.tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (t.kind != Token::Kind::Punct || t.in_generic_args)
        continue;
      const std::string& x = t.text;
      bool binary = i > 0 && ends_operand(tokens[i - 1]);
      if (x == "+" || x == "-") {
        if (binary) {
          if (want("ArithmeticOperatorReplacementBinary"))
            add("ArithmeticOperatorReplacementBinary", SiteKind::BinaryArith, t.begin, t.end);
        } else if (want("ArithmeticOperatorReplacementUnary")) {
          add("ArithmeticOperatorReplacementUnary", SiteKind::UnaryArith, t.begin, t.end);
        }
      } else if (x == "*" || x == "/" || x == "%") {
        if (binary && want("ArithmeticOperatorReplacementBinary"))
          add("ArithmeticOperatorReplacementBinary", SiteKind::BinaryArith, t.begin, t.end);
      } else if (x == "++" || x == "--") {
        if (want("ArithmeticOperatorReplacementShortcut"))
          add("ArithmeticOperatorReplacementShortcut", SiteKind::ShortcutArith, t.begin, t.end);
      } else if (x == "&" || x == "|" || x == "^") {
        if (binary && want("LogicalOperatorReplacement"))
          add("LogicalOperatorReplacement", SiteKind::Logical, t.begin, t.end);
      } else if (x == "<<" || x == ">>" || x == ">>>") {
        if (want("ShiftOperatorReplacement"))
          add("ShiftOperatorReplacement", SiteKind::Shift, t.begin, t.end);
      } else if (x == "&&" || x == "||") {
        if (want("ConditionalOperatorReplacement"))
          add("ConditionalOperatorReplacement", SiteKind::Conditional, t.begin, t.end);
      } else if (x == "==" || x == "!=") {
        bool null_side = (i > 0 && tokens[i - 1].text == "null") ||
                         (i + 1 < tokens.size() && tokens[i + 1].text == "null");
        if (null_side) {
          if (want("NegateNullCheck"))
            add("NegateNullCheck", SiteKind::NullCheck, t.begin, t.end);
        } else if (want("RelationalOperatorReplacement")) {
          add("RelationalOperatorReplacement", SiteKind::Relational, t.begin, t.end);
        }
      } else if (x == "<" || x == ">" || x == "<=" || x == ">=") {
        if (want("RelationalOperatorReplacement"))
          add("RelationalOperatorReplacement", SiteKind::Relational, t.begin, t.end);
      }
    }
  }

  // A `{` opens a body whose returns belong to a different callable when it
  // follows `->` (lambda) or closes a `new Type(...)` argument list
  // (anonymous class). Control-flow blocks (`if (...) {` etc.) are not opaque.
  bool is_opaque_body_open(size_t brace_idx) const {
    const auto& tokens = parsed.tokens;
    const Token& prev = tokens[brace_idx - 1];
    if (prev.text == "->")
      return true;
    if (prev.text != ")")
      return false;
    // walk back to the matching '('
    int depth = 0;
    size_t i = brace_idx - 1;
    while (true) {
      if (tokens[i].text == ")")
        ++depth;
      else if (tokens[i].text == "(" && --depth == 0)
        break;
      if (i == 0)
        return false;
      --i;
    }
    if (i == 0)
      return false;
    // before the '(': a type name, possibly qualified/generic, after `new`
    size_t j = i - 1;
    if (tokens[j].kind != Token::Kind::Identifier)
      return false;
    while (j > 0 && (tokens[j].in_generic_args ||
                     tokens[j].kind == Token::Kind::Identifier || tokens[j].text == "."))
      --j;
    return tokens[j].text == "new";
  }

  void collect_return_sites() {
    if (!want("NullifyReturnValue"))
      return;
    const auto& tokens = parsed.tokens;
    for (const MethodContext& m : parsed.methods) {
      if (!m.has_body || m.is_constructor || !m.return_type || !is_reference_type(*m.return_type))
        continue;
      for (size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.begin < m.body_begin || t.end > m.body_end)
          continue;
        if (t.text == "{" && t.begin > m.body_begin && i > 0 && is_opaque_body_open(i)) {
          size_t close = skip_balanced(tokens, i, "{", "}");
          if (close < tokens.size() && tokens[close].end < m.body_end) {
            // lambda or anonymous-class body: returns inside belong elsewhere
            i = close;
            continue;
          }
        }
        if (t.text != "return")
          continue;
        size_t j = i + 1;
        while (j < tokens.size() && tokens[j].text != ";") {
          if (tokens[j].text == "(")
            j = skip_balanced(tokens, j, "(", ")");
          if (tokens[j].text == "{")
            j = skip_balanced(tokens, j, "{", "}");
          ++j;
        }
        if (j >= tokens.size() || tokens[j].end > m.body_end)
          continue;
        if (j == i + 1)
          continue; // bare `return;`
        if (j == i + 2 && tokens[i + 1].text == "null")
          continue; // already `return null;`
        add("NullifyReturnValue", SiteKind::ReturnStmt, t.begin, tokens[j].end);
        i = j;
      }
    }
  }

  void collect_param_sites() {
    if (!want("NullifyInputVariable"))
      return;
    for (const MethodContext& m : parsed.methods) {
      if (!m.has_body)
        continue;
      for (const Parameter& p : m.params) {
        if (!is_reference_type(p.type))
          continue;
        add("NullifyInputVariable", SiteKind::MethodParam, m.insert_offset, m.insert_offset,
            p.name);
      }
    }
  }

  void collect_new_sites() {
    if (!want("NullifyObjectInitialization"))
      return;
    const auto& tokens = parsed.tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].text != "new")
        continue;
      size_t j = i + 1;
      // qualified type name, possibly with masked generic arguments
      if (j >= tokens.size() ||
          (tokens[j].kind != Token::Kind::Identifier && !primitive_types().count(tokens[j].text)))
        continue;
      ++j;
      while (j < tokens.size() &&
             (tokens[j].in_generic_args ||
              (tokens[j].text == "." && j + 1 < tokens.size() &&
               tokens[j + 1].kind == Token::Kind::Identifier)))
        j += tokens[j].text == "." ? 2 : 1;
      if (j >= tokens.size())
        continue;
      size_t end_idx;
      if (tokens[j].text == "(") {
        end_idx = skip_balanced(tokens, j, "(", ")");
        if (end_idx >= tokens.size())
          continue;
        // anonymous class body
        if (end_idx + 1 < tokens.size() && tokens[end_idx + 1].text == "{") {
          size_t body_close = skip_balanced(tokens, end_idx + 1, "{", "}");
          if (body_close >= tokens.size())
            continue;
          end_idx = body_close;
        }
      } else if (tokens[j].text == "[") {
        end_idx = j;
        while (end_idx < tokens.size() && tokens[end_idx].text == "[") {
          end_idx = skip_balanced(tokens, end_idx, "[", "]");
          if (end_idx >= tokens.size())
            break;
          if (end_idx + 1 < tokens.size() && tokens[end_idx + 1].text == "[")
            ++end_idx;
          else
            break;
        }
        if (end_idx >= tokens.size())
          continue;
        if (end_idx + 1 < tokens.size() && tokens[end_idx + 1].text == "{") {
          size_t init_close = skip_balanced(tokens, end_idx + 1, "{", "}");
          if (init_close >= tokens.size())
            continue;
          end_idx = init_close;
        }
      } else {
        continue;
      }
      add("NullifyObjectInitialization", SiteKind::NewExpr, tokens[i].begin, tokens[end_idx].end);
    }
  }
};

} // namespace

std::vector<MutationSite> locate_sites(const ParsedFile& parsed,
                                       const std::vector<std::string>& enabled_operator_ids) {
  if (!parsed.ok())
    return {};
  std::set<std::string> enabled(enabled_operator_ids.begin(), enabled_operator_ids.end());
  SiteCollector collector{parsed, enabled, {}};
  collector.collect_token_sites();
  collector.collect_return_sites();
  collector.collect_param_sites();
  collector.collect_new_sites();
  auto& sites = collector.sites;
  std::sort(sites.begin(), sites.end(), [](const MutationSite& a, const MutationSite& b) {
    if (a.begin != b.begin)
      return a.begin < b.begin;
    return a.operator_id < b.operator_id;
  });
  return sites;
}

} // namespace nullforge
