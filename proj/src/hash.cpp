#include "nullforge/hash.hpp"

#include <array>

namespace nullforge {

std::string to_hex16(uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

} // namespace nullforge
