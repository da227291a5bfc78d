#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vner {

// One token of a pre-segmented sentence. Multi-syllable Vietnamese words are
// single tokens with underscore-joined syllables ("Hà_Nội"). An empty
// annotation string means the annotation is absent.
struct Token {
  std::string word;
  std::string pos;
  std::string chunk;
  std::string regexp;  // token-pattern type, "NA" when annotated but unmatched
  std::string ne;      // IOB2 tag: "O", "B-PER", "I-LOC", ...

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

// Typed span of tokens, inclusive on both ends. score is on a
// log-probability scale (mean per-token log-probability of the decode that
// produced it; 0 for spans extracted from gold data).
struct EntitySpan {
  int start = 0;
  int end = 0;
  std::string label;
  double score = 0.0;

  bool same_span(const EntitySpan& o) const {
    return start == o.start && end == o.end && label == o.label;
  }
};

// Annotation columns that may follow the surface word in a CoNLL-style file.
enum class Column { POS, CHUNK, REGEXP, NE };

struct ColumnSpec {
  std::vector<Column> columns;

  // word POS CHUNK NE -- the CoNLL layout.
  static ColumnSpec standard();
  // word POS CHUNK REGEXP NE -- what `annotate` writes.
  static ColumnSpec annotated();
};

bool is_valid_ne_tag(std::string_view tag);

// Promotes every I-X without a compatible predecessor to B-X, in place.
// This both repairs broken sequences and normalizes IOB1 input to IOB2.
void normalize_iob2(Sentence& sentence);

// Reads tab- or space-separated token lines; a blank line ends a sentence.
// Without a ColumnSpec, each line may carry 2-4 columns interpreted as
// word [POS [CHUNK [NE]]]. With one, every line must have exactly
// 1 + |columns| fields. NE values are validated and normalized to IOB2.
std::vector<Sentence> read_conll(std::istream& in);
std::vector<Sentence> read_conll(std::istream& in, const ColumnSpec& spec);

// Tab-separated; absent annotations become "-" (POS/CHUNK), "NA" (REGEXP)
// or "O" (NE).
void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const ColumnSpec& spec);

// Maximal IOB2 spans in start order. Orphan I-X is treated as B-X.
std::vector<EntitySpan> extract_spans(const Sentence& sentence);

// Same, with each span scored by the mean of token_logp over its tokens.
std::vector<EntitySpan> extract_spans(const Sentence& sentence,
                                      const std::vector<double>& token_logp);

// Writes spans over an all-O tag sequence.
void apply_spans(Sentence& sentence, const std::vector<EntitySpan>& spans);

// Reverses token order. NE tags, when present, are re-labeled so the result
// is again valid IOB2 (the last token of each span becomes its B- token).
Sentence reverse_sentence(const Sentence& sentence);

}  // namespace vner
