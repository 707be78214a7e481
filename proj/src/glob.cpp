#include "nullforge/glob.hpp"

namespace nullforge {
namespace {

std::vector<std::string_view> split_segments(std::string_view s) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t slash = s.find('/', pos);
    if (slash == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, slash - pos));
    pos = slash + 1;
  }
  return out;
}

// Single-segment match with '*' and '?'.
bool segment_match(std::string_view pat, std::string_view text) {
  size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*')
    ++p;
  return p == pat.size();
}

bool match_from(const std::vector<std::string_view>& pat, size_t pi,
                const std::vector<std::string_view>& path, size_t ti) {
  while (pi < pat.size()) {
    if (pat[pi] == "**") {
      if (pi + 1 == pat.size())
        return true;
      for (size_t skip = ti; skip <= path.size(); ++skip)
        if (match_from(pat, pi + 1, path, skip))
          return true;
      return false;
    }
    if (ti >= path.size() || !segment_match(pat[pi], path[ti]))
      return false;
    ++pi;
    ++ti;
  }
  return ti == path.size();
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return match_from(split_segments(pattern), 0, split_segments(path), 0);
}

bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path) {
  for (const auto& p : patterns)
    if (glob_match(p, path))
      return true;
  return false;
}

} // namespace nullforge
