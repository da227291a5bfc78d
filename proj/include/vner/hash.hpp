#pragma once

#include <cstdint>
#include <string_view>

namespace vner {

// 64-bit FNV-1a over the bytes of s.
inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace vner
