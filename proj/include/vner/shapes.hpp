#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace vner {

// Character-level structural classes of a token. The first eleven are
// independently queryable predicates; NONE is the canonical shape of a word
// that satisfies none of them (punctuation and the like).
enum class Shape {
  LOWER,
  CAPITALIZED,
  ALLCAPS,
  MIXEDCASE,
  CAP_PERIOD,
  ENDS_DIGIT,
  HYPHEN,
  NUMBER,
  DATE,
  CODE,
  NAME,
  NONE,
};

inline constexpr int kNumShapePredicates = 11;

std::string_view shape_name(Shape s);

// Throws DataError on an unknown name.
Shape shape_from_name(std::string_view name);

// Bit i is set iff the word satisfies Shape(i). Underscore separates
// syllables; letter classification follows vner::uni.
uint32_t shape_mask(std::string_view word);

inline bool mask_has(uint32_t mask, Shape s) {
  return (mask >> static_cast<int>(s)) & 1u;
}

// Every predicate the word satisfies, in enum order.
std::vector<Shape> shape_predicates(std::string_view word);

// Highest-priority satisfied predicate under the fixed precedence
// DATE > NUMBER > CODE > CAP_PERIOD > ALLCAPS > NAME > MIXEDCASE >
// ENDS_DIGIT > HYPHEN > CAPITALIZED > LOWER > NONE.
Shape canonical_shape(std::string_view word);

}  // namespace vner
