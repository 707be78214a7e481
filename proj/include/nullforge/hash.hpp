#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nullforge {

/// 64-bit FNV-1a, used for stable content-derived mutant ids.
constexpr uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Fixed-width (16 char) lowercase hex rendering.
std::string to_hex16(uint64_t value);

} // namespace nullforge
