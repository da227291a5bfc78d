#include "vner/tokregex.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "vner/errors.hpp"
#include "vner/hash.hpp"
#include "vner/shapes.hpp"
#include "vner/unicode.hpp"

namespace vner {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.emplace_back(line.substr(start, i - start));
  }
  return fields;
}

std::vector<std::string> split_pipe(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t bar = s.find('|', start);
    parts.push_back(s.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return parts;
}

// Folded word plus shape mask, computed once per token.
struct TokenView {
  std::string folded;
  uint32_t mask = 0;
};

TokenView make_view(const std::string& word) {
  return {uni::fold_first(word), shape_mask(word)};
}

std::vector<TokenView> make_views(const Sentence& sentence) {
  std::vector<TokenView> views;
  views.reserve(sentence.size());
  for (const Token& token : sentence) views.push_back(make_view(token.word));
  return views;
}

bool accepts(const PatternSet& set, int predicate_id, const TokenView& view) {
  const TokenPredicate& pred = set.predicates[predicate_id];
  switch (pred.kind) {
    case PredicateKind::LEXICON:
      return pred.lexicon.count(view.folded) != 0;
    case PredicateKind::SHAPE:
      return (pred.shape_mask & view.mask) != 0;
    case PredicateKind::COMPOUND:
      for (int member : pred.members) {
        if (accepts(set, member, view)) return true;
      }
      return false;
  }
  return false;
}

std::optional<Match> match_at_impl(const PatternSet& set,
                                   const TokenPattern& pattern,
                                   const std::vector<TokenView>& views,
                                   int position) {
  const int len = static_cast<int>(pattern.sequence.size());
  if (position < 0 || position + len > static_cast<int>(views.size())) {
    return std::nullopt;
  }
  for (int k = 0; k < len; ++k) {
    if (!accepts(set, pattern.sequence[k], views[position + k])) {
      return std::nullopt;
    }
  }
  return Match{pattern.name, position, position + len - 1};
}

std::vector<Match> find_matches_impl(const PatternSet& set,
                                     const std::vector<TokenView>& views,
                                     int range_start, int range_end) {
  std::vector<Match> matches;
  for (int pos = range_start; pos <= range_end; ++pos) {
    for (const TokenPattern& pattern : set.patterns) {
      if (pos + static_cast<int>(pattern.sequence.size()) - 1 > range_end) {
        continue;
      }
      if (auto m = match_at_impl(set, pattern, views, pos)) {
        matches.push_back(std::move(*m));
      }
    }
  }
  // The position loop emits same-start matches in priority order, so a
  // stable sort on (start, descending length) yields the documented
  // (start, length desc, priority) order.
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match& a, const Match& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.end - a.start > b.end - b.start;
                   });
  return matches;
}

int resolve(const std::map<std::string, int>& index, const std::string& name,
            int line_no) {
  auto it = index.find(name);
  if (it == index.end()) {
    throw ParseError("unknown predicate '" + name + "'", line_no);
  }
  return it->second;
}

}  // namespace

PatternSet load_patterns(std::istream& in) {
  PatternSet set;
  std::map<std::string, int> pred_index;
  std::map<std::string, int> pattern_index;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) continue;

    if (fields[0] == "predicate") {
      if (fields.size() < 4) {
        throw ParseError("predicate needs a name, a kind and arguments",
                         line_no);
      }
      const std::string& name = fields[1];
      const std::string& kind = fields[2];
      if (pred_index.count(name)) {
        throw ParseError("duplicate predicate '" + name + "'", line_no);
      }
      TokenPredicate pred;
      pred.name = name;
      if (kind == "lexicon") {
        pred.kind = PredicateKind::LEXICON;
        for (size_t i = 3; i < fields.size(); ++i) {
          pred.lexicon.insert(uni::fold_first(fields[i]));
        }
      } else if (kind == "shape") {
        if (fields.size() != 4) {
          throw ParseError("shape takes one |-separated list", line_no);
        }
        pred.kind = PredicateKind::SHAPE;
        for (const std::string& part : split_pipe(fields[3])) {
          Shape shape;
          try {
            shape = shape_from_name(part);
          } catch (const DataError&) {
            throw ParseError("unknown shape '" + part + "'", line_no);
          }
          if (shape == Shape::NONE) {
            throw ParseError("NONE is not a matchable shape", line_no);
          }
          pred.shape_mask |= 1u << static_cast<int>(shape);
        }
      } else if (kind == "any") {
        if (fields.size() != 4) {
          throw ParseError("any takes one |-separated list", line_no);
        }
        pred.kind = PredicateKind::COMPOUND;
        // Members must already be defined, which keeps references acyclic.
        for (const std::string& part : split_pipe(fields[3])) {
          pred.members.push_back(resolve(pred_index, part, line_no));
        }
      } else {
        throw ParseError("unknown predicate kind '" + kind + "'", line_no);
      }
      pred_index[name] = static_cast<int>(set.predicates.size());
      set.predicates.push_back(std::move(pred));
    } else if (fields[0] == "pattern") {
      if (fields.size() < 3) {
        throw ParseError("pattern needs a name and at least one predicate",
                         line_no);
      }
      const std::string& name = fields[1];
      if (pattern_index.count(name)) {
        throw ParseError("duplicate pattern '" + name + "'", line_no);
      }
      // The name is written into the REGEXP column, so it must not collide
      // with the unmatched marker, the context sentinels or NE tag syntax.
      if (name == "NA" || name == "BOS" || name == "EOS" ||
          is_valid_ne_tag(name)) {
        throw ParseError("reserved pattern name '" + name + "'", line_no);
      }
      TokenPattern pattern;
      pattern.name = name;
      pattern.priority = static_cast<int>(set.patterns.size());
      for (size_t i = 2; i < fields.size(); ++i) {
        pattern.sequence.push_back(resolve(pred_index, fields[i], line_no));
      }
      pattern_index[name] = pattern.priority;
      set.patterns.push_back(std::move(pattern));
    } else {
      throw ParseError("expected 'predicate' or 'pattern', got '" + fields[0] +
                           "'",
                       line_no);
    }
  }
  return set;
}

PatternSet load_patterns_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open pattern file: " + path);
  return load_patterns(in);
}

std::string fingerprint(const PatternSet& set) {
  std::ostringstream canon;
  for (const TokenPredicate& pred : set.predicates) {
    canon << "predicate " << pred.name;
    switch (pred.kind) {
      case PredicateKind::LEXICON:
        canon << " lexicon";
        for (const std::string& word : pred.lexicon) canon << ' ' << word;
        break;
      case PredicateKind::SHAPE:
        canon << " shape";
        for (int s = 0; s < kNumShapePredicates; ++s) {
          if (pred.shape_mask & (1u << s)) {
            canon << ' ' << shape_name(static_cast<Shape>(s));
          }
        }
        break;
      case PredicateKind::COMPOUND:
        canon << " any";
        for (int member : pred.members) {
          canon << ' ' << set.predicates[member].name;
        }
        break;
    }
    canon << '\n';
  }
  for (const TokenPattern& pattern : set.patterns) {
    canon << "pattern " << pattern.name;
    for (int pred : pattern.sequence) {
      canon << ' ' << set.predicates[pred].name;
    }
    canon << '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon.str())));
  return buf;
}

bool predicate_accepts(const PatternSet& set, int predicate_id,
                       const std::string& word) {
  if (predicate_id < 0 ||
      predicate_id >= static_cast<int>(set.predicates.size())) {
    throw DataError("predicate id " + std::to_string(predicate_id) +
                    " out of range");
  }
  return accepts(set, predicate_id, make_view(word));
}

std::optional<Match> match_at(const PatternSet& set,
                              const TokenPattern& pattern,
                              const Sentence& sentence, int position) {
  return match_at_impl(set, pattern, make_views(sentence), position);
}

std::vector<Match> find_all_matches(const PatternSet& set,
                                    const Sentence& sentence, int range_start,
                                    int range_end) {
  if (range_start > range_end) return {};
  if (range_start < 0 || range_end >= static_cast<int>(sentence.size())) {
    throw DataError("match range out of sentence bounds");
  }
  return find_matches_impl(set, make_views(sentence), range_start, range_end);
}

std::vector<Match> find_all_matches(const PatternSet& set,
                                    const Sentence& sentence) {
  if (sentence.empty()) return {};
  return find_all_matches(set, sentence, 0,
                          static_cast<int>(sentence.size()) - 1);
}

Sentence annotate(const PatternSet& set, const Sentence& sentence) {
  Sentence out = sentence;
  for (Token& token : out) token.regexp = "NA";
  if (out.empty() || set.patterns.empty()) return out;

  const std::vector<TokenView> views = make_views(sentence);
  // Commit the longest match in the range (ties: leftmost, then lowest
  // priority), then recurse on what remains to its left and right.
  std::function<void(int, int)> cover = [&](int lo, int hi) {
    if (lo > hi) return;
    std::vector<Match> matches = find_matches_impl(set, views, lo, hi);
    if (matches.empty()) return;
    // Matches are ordered by (start, length desc, priority), so a scan
    // keeping the first strictly-longer match lands on the leftmost,
    // lowest-priority one of maximal length.
    const Match* best = &matches[0];
    for (const Match& m : matches) {
      if (m.end - m.start > best->end - best->start) best = &m;
    }
    for (int i = best->start; i <= best->end; ++i) out[i].regexp = best->pattern;
    int start = best->start, end = best->end;
    cover(lo, start - 1);
    cover(end + 1, hi);
  };
  cover(0, static_cast<int>(out.size()) - 1);
  return out;
}

}  // namespace vner
