#include "vner/shapes.hpp"

#include <array>

#include "vner/errors.hpp"
#include "vner/unicode.hpp"

namespace vner {

namespace {

constexpr std::array<std::string_view, 12> kShapeNames = {
    "LOWER",      "CAPITALIZED", "ALLCAPS", "MIXEDCASE",
    "CAP_PERIOD", "ENDS_DIGIT",  "HYPHEN",  "NUMBER",
    "DATE",       "CODE",        "NAME",    "NONE",
};

// More specific and rarer shapes win when picking a single canonical class.
constexpr std::array<Shape, 11> kPrecedence = {
    Shape::DATE,      Shape::NUMBER,     Shape::CODE,   Shape::CAP_PERIOD,
    Shape::ALLCAPS,   Shape::NAME,       Shape::MIXEDCASE,
    Shape::ENDS_DIGIT, Shape::HYPHEN,    Shape::CAPITALIZED,
    Shape::LOWER,
};

using Codepoints = std::vector<uint32_t>;

// (UpperLetter Letter* '.')+  -- "H.", "Th.", "U.S."
bool cap_period(const Codepoints& cps) {
  size_t i = 0;
  int groups = 0;
  while (i < cps.size()) {
    if (!uni::is_upper(cps[i])) return false;
    ++i;
    while (i < cps.size() && uni::is_letter(cps[i])) ++i;
    if (i >= cps.size() || cps[i] != '.') return false;
    ++i;
    ++groups;
  }
  return groups >= 1;
}

// [+-]? digits ( [.,] digits )?
bool number(const Codepoints& cps) {
  size_t i = 0;
  if (i < cps.size() && (cps[i] == '+' || cps[i] == '-')) ++i;
  size_t d0 = i;
  while (i < cps.size() && uni::is_digit(cps[i])) ++i;
  if (i == d0) return false;
  if (i == cps.size()) return true;
  if (cps[i] != '.' && cps[i] != ',') return false;
  ++i;
  size_t d1 = i;
  while (i < cps.size() && uni::is_digit(cps[i])) ++i;
  return i > d1 && i == cps.size();
}

// d{1,2} sep d{1,2} (sep d{2,4})?  with the same separator, sep in {-,/}
bool date(const Codepoints& cps) {
  size_t i = 0;
  auto digits = [&](size_t lo, size_t hi) -> size_t {
    size_t n = 0;
    while (i < cps.size() && uni::is_digit(cps[i]) && n < hi) {
      ++i;
      ++n;
    }
    return n >= lo ? n : 0;
  };
  if (digits(1, 2) == 0) return false;
  if (i >= cps.size() || (cps[i] != '-' && cps[i] != '/')) return false;
  uint32_t sep = cps[i];
  ++i;
  if (digits(1, 2) == 0) return false;
  if (i == cps.size()) return true;
  if (cps[i] != sep) return false;
  ++i;
  if (digits(2, 4) == 0) return false;
  return i == cps.size();
}

// Two or more underscore-joined syllables, each starting with an uppercase
// letter and containing no further uppercase letters.
bool name(const Codepoints& cps) {
  int syllables = 0;
  size_t i = 0;
  while (i <= cps.size()) {
    size_t start = i;
    while (i < cps.size() && cps[i] != '_') ++i;
    if (i == start) return false;  // empty syllable
    if (!uni::is_upper(cps[start])) return false;
    for (size_t k = start + 1; k < i; ++k)
      if (uni::is_upper(cps[k])) return false;
    ++syllables;
    if (i == cps.size()) break;
    ++i;  // skip '_'
    if (i == cps.size()) return false;  // trailing '_'
  }
  return syllables >= 2;
}

}  // namespace

std::string_view shape_name(Shape s) {
  return kShapeNames[static_cast<int>(s)];
}

Shape shape_from_name(std::string_view n) {
  for (size_t i = 0; i < kShapeNames.size(); ++i)
    if (kShapeNames[i] == n) return static_cast<Shape>(i);
  throw DataError("unknown shape name: " + std::string(n));
}

uint32_t shape_mask(std::string_view word) {
  const Codepoints cps = uni::decode_utf8(word);
  if (cps.empty()) return 0;

  int letters = 0, uppers = 0, lowers = 0, digits = 0;
  bool hyphen = false, all_alnum = true;
  for (uint32_t c : cps) {
    if (uni::is_letter(c)) {
      ++letters;
      if (uni::is_upper(c))
        ++uppers;
      else
        ++lowers;
    } else if (uni::is_digit(c)) {
      ++digits;
    } else {
      all_alnum = false;
      if (c == '-') hyphen = true;
    }
  }

  uint32_t m = 0;
  auto set = [&m](Shape s) { m |= 1u << static_cast<int>(s); };

  if (letters > 0 && uppers == 0) set(Shape::LOWER);
  if (letters > 0 && lowers == 0) set(Shape::ALLCAPS);
  if (uni::is_upper(cps[0]) && lowers > 0 && uppers == 1)
    set(Shape::CAPITALIZED);
  if (name(cps)) set(Shape::NAME);
  if (uppers > 0 && lowers > 0 && !mask_has(m, Shape::CAPITALIZED) &&
      !mask_has(m, Shape::NAME))
    set(Shape::MIXEDCASE);
  if (cap_period(cps)) set(Shape::CAP_PERIOD);
  if (letters > 0 && uni::is_digit(cps.back())) set(Shape::ENDS_DIGIT);
  if (hyphen) set(Shape::HYPHEN);
  if (number(cps)) set(Shape::NUMBER);
  if (date(cps)) set(Shape::DATE);
  if (all_alnum && letters > 0 && digits > 0) set(Shape::CODE);
  return m;
}

std::vector<Shape> shape_predicates(std::string_view word) {
  const uint32_t m = shape_mask(word);
  std::vector<Shape> out;
  for (int i = 0; i < kNumShapePredicates; ++i)
    if ((m >> i) & 1u) out.push_back(static_cast<Shape>(i));
  return out;
}

Shape canonical_shape(std::string_view word) {
  const uint32_t m = shape_mask(word);
  for (Shape s : kPrecedence)
    if (mask_has(m, s)) return s;
  return Shape::NONE;
}

}  // namespace vner
