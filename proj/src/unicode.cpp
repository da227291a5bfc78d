#include "vner/unicode.hpp"

namespace vner::uni {

namespace {

constexpr uint32_t kReplacement = 0xFFFD;

}  // namespace

std::vector<uint32_t> decode_utf8(std::string_view s) {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    uint32_t cp = 0;
    size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (size_t k = 1; k < len; ++k) {
      unsigned char bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_digit(uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter(uint32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x100 && cp <= 0x17F) return true;
  if (cp == 0x1A0 || cp == 0x1A1 || cp == 0x1AF || cp == 0x1B0) return true;
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;
  return false;
}

bool is_upper(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE) return cp != 0xD7;
  if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 0;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 1;
  if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 0;
  if (cp == 0x178) return true;
  if (cp >= 0x179 && cp <= 0x17D) return (cp & 1) == 1;
  if (cp == 0x1A0 || cp == 0x1AF) return true;
  if (cp >= 0x1E00 && cp <= 0x1E94) return (cp & 1) == 0;
  if (cp == 0x1E9E) return true;
  if (cp >= 0x1EA0 && cp <= 0x1EFE) return (cp & 1) == 0;
  return false;
}

bool is_lower(uint32_t cp) { return is_letter(cp) && !is_upper(cp); }

uint32_t to_lower(uint32_t cp) {
  if (!is_upper(cp)) return cp;
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE) return cp + 32;
  if (cp == 0x178) return 0xFF;
  if (cp == 0x1E9E) return 0xDF;
  if (cp == 0x1A0 || cp == 0x1AF) return cp + 1;
  // Remaining covered blocks pair uppercase with the next codepoint.
  return cp + 1;
}

std::string fold_first(std::string_view word) {
  std::vector<uint32_t> cps = decode_utf8(word);
  if (cps.empty()) return std::string(word);
  std::string out;
  out.reserve(word.size());
  append_utf8(out, to_lower(cps[0]));
  for (size_t i = 1; i < cps.size(); ++i) append_utf8(out, cps[i]);
  return out;
}

}  // namespace vner::uni
