#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vner/corpus.hpp"

namespace vner {

enum class PredicateKind {
  LEXICON,   // membership in a word set, first character case-folded
  SHAPE,     // disjunction of shape predicates
  COMPOUND,  // disjunction of other predicates
};

struct TokenPredicate {
  std::string name;
  PredicateKind kind = PredicateKind::LEXICON;
  std::set<std::string> lexicon;  // entries stored first-char-folded
  uint32_t shape_mask = 0;
  std::vector<int> members;  // indices of earlier predicates (so: acyclic)
};

// A fixed-length sequence of predicates. The name doubles as the regexp
// type written into matched tokens.
struct TokenPattern {
  std::string name;
  std::vector<int> sequence;  // predicate indices, length >= 1
  int priority = 0;           // position in the pattern file, 0-based
};

struct PatternSet {
  std::vector<TokenPredicate> predicates;
  std::vector<TokenPattern> patterns;
};

struct Match {
  std::string pattern;
  int start = 0;
  int end = 0;  // inclusive; end - start + 1 == sequence length
};

// Parses the line-oriented pattern definition format:
//   predicate <name> lexicon <word> <word> ...
//   predicate <name> shape <SHAPE|SHAPE|...>
//   predicate <name> any <pred>|<pred>
//   pattern <name> <pred> <pred> ...
// '#' starts a comment; file order defines pattern priority. Predicates
// must be defined before they are referenced. Throws ParseError.
PatternSet load_patterns(std::istream& in);
PatternSet load_patterns_file(const std::string& path);

// Hex digest of a canonical serialization; models record it so a decode
// with a different pattern file can be flagged.
std::string fingerprint(const PatternSet& set);

bool predicate_accepts(const PatternSet& set, int predicate_id,
                       const std::string& word);

std::optional<Match> match_at(const PatternSet& set,
                              const TokenPattern& pattern,
                              const Sentence& sentence, int position);

// All matches with [start, end] inside [range_start, range_end], ordered by
// start, then descending length, then priority.
std::vector<Match> find_all_matches(const PatternSet& set,
                                    const Sentence& sentence, int range_start,
                                    int range_end);
std::vector<Match> find_all_matches(const PatternSet& set,
                                    const Sentence& sentence);

// Greedy recursive longest-match annotation: repeatedly commits the longest
// match in the current range (ties: leftmost, then lowest priority) and
// recurses on both remainders. Every token gets a REGEXP value; uncovered
// tokens get "NA".
Sentence annotate(const PatternSet& set, const Sentence& sentence);

}  // namespace vner
