#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 and Latin-script character classification. Covers ASCII,
// Latin-1 Supplement, Latin Extended-A, the horn letters of Extended-B and
// Latin Extended Additional, which together span Vietnamese orthography.
// Codepoints outside these blocks are treated as non-letters.

namespace vner::uni {

// Decodes UTF-8; each invalid byte becomes U+FFFD.
std::vector<uint32_t> decode_utf8(std::string_view s);

void append_utf8(std::string& out, uint32_t cp);

bool is_letter(uint32_t cp);
bool is_upper(uint32_t cp);
bool is_lower(uint32_t cp);
bool is_digit(uint32_t cp);

uint32_t to_lower(uint32_t cp);

// Lowercases the first codepoint only ("Báo" -> "báo").
std::string fold_first(std::string_view word);

}  // namespace vner::uni
