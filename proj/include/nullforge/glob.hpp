#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nullforge {

/// Matches a '/'-separated path against a glob pattern.
/// Supports '*' and '?' within one path segment and '**' across segments.
bool glob_match(std::string_view pattern, std::string_view path);

/// True when the path matches any pattern in the list.
bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path);

} // namespace nullforge
