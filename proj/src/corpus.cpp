#include "vner/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "vner/errors.hpp"

namespace vner {

namespace {

// Fields are separated by a tab or by runs of spaces; both appear in the
// wild. A trailing '\r' (CRLF input) is stripped before splitting.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

void assign_column(Token& token, Column column, std::string_view value) {
  switch (column) {
    case Column::POS: token.pos = value; break;
    case Column::CHUNK: token.chunk = value; break;
    case Column::REGEXP: token.regexp = value; break;
    case Column::NE: token.ne = value; break;
  }
}

void check_ne(std::string_view tag, int line_no) {
  if (!is_valid_ne_tag(tag)) {
    throw ParseError("invalid NE tag '" + std::string(tag) + "'", line_no);
  }
}

void finish_sentence(std::vector<Sentence>& out, Sentence& current) {
  if (current.empty()) return;
  normalize_iob2(current);
  out.push_back(std::move(current));
  current.clear();
}

template <typename LineHandler>
std::vector<Sentence> read_lines(std::istream& in, LineHandler&& handle) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      finish_sentence(sentences, current);
      continue;
    }
    handle(split_fields(line), line_no, current);
  }
  finish_sentence(sentences, current);
  return sentences;
}

}  // namespace

ColumnSpec ColumnSpec::standard() {
  return {{Column::POS, Column::CHUNK, Column::NE}};
}

ColumnSpec ColumnSpec::annotated() {
  return {{Column::POS, Column::CHUNK, Column::REGEXP, Column::NE}};
}

bool is_valid_ne_tag(std::string_view tag) {
  if (tag == "O") return true;
  if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
    return false;
  }
  return std::all_of(tag.begin() + 2, tag.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

void normalize_iob2(Sentence& sentence) {
  std::string_view previous_type;  // type continued by an I- tag, if any
  for (Token& token : sentence) {
    std::string_view tag = token.ne;
    if (tag.size() >= 3 && tag[1] == '-') {
      std::string_view type = tag.substr(2);
      if (tag[0] == 'I' && type != previous_type) token.ne[0] = 'B';
      previous_type = type;
    } else {
      previous_type = {};
    }
  }
}

std::vector<Sentence> read_conll(std::istream& in) {
  return read_lines(in, [](const std::vector<std::string_view>& fields,
                           int line_no, Sentence& current) {
    if (fields.size() < 2 || fields.size() > 4) {
      throw ParseError("expected 2-4 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Token token;
    token.word = fields[0];
    token.pos = fields[1];
    if (fields.size() >= 3) token.chunk = fields[2];
    if (fields.size() == 4) {
      check_ne(fields[3], line_no);
      token.ne = fields[3];
    }
    current.push_back(std::move(token));
  });
}

std::vector<Sentence> read_conll(std::istream& in, const ColumnSpec& spec) {
  const size_t expected = 1 + spec.columns.size();
  return read_lines(in, [&](const std::vector<std::string_view>& fields,
                            int line_no, Sentence& current) {
    if (fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) +
                           " columns, got " + std::to_string(fields.size()),
                       line_no);
    }
    Token token;
    token.word = fields[0];
    for (size_t c = 0; c < spec.columns.size(); ++c) {
      if (spec.columns[c] == Column::NE) check_ne(fields[c + 1], line_no);
      assign_column(token, spec.columns[c], fields[c + 1]);
    }
    current.push_back(std::move(token));
  });
}

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const ColumnSpec& spec) {
  for (const Sentence& sentence : sentences) {
    for (const Token& token : sentence) {
      out << token.word;
      for (Column column : spec.columns) {
        const std::string* value = nullptr;
        const char* placeholder = "-";
        switch (column) {
          case Column::POS: value = &token.pos; break;
          case Column::CHUNK: value = &token.chunk; break;
          case Column::REGEXP: value = &token.regexp; placeholder = "NA"; break;
          case Column::NE: value = &token.ne; placeholder = "O"; break;
        }
        out << '\t' << (value->empty() ? placeholder : value->c_str());
      }
      out << '\n';
    }
    out << '\n';
  }
}

std::vector<EntitySpan> extract_spans(const Sentence& sentence) {
  std::vector<EntitySpan> spans;
  std::string_view open_type;
  for (int i = 0; i < static_cast<int>(sentence.size()); ++i) {
    std::string_view tag = sentence[i].ne;
    if (tag.size() >= 3 && tag[1] == '-') {
      std::string_view type = tag.substr(2);
      // B- always starts a span; an orphan I- (no open span of the same
      // type) is repaired to one.
      if (tag[0] == 'B' || type != open_type) {
        spans.push_back({i, i, std::string(type), 0.0});
        open_type = type;
      } else {
        spans.back().end = i;
      }
    } else {
      open_type = {};
    }
  }
  return spans;
}

std::vector<EntitySpan> extract_spans(const Sentence& sentence,
                                      const std::vector<double>& token_logp) {
  if (token_logp.size() != sentence.size()) {
    throw DataError("token_logp size " + std::to_string(token_logp.size()) +
                    " does not match sentence length " +
                    std::to_string(sentence.size()));
  }
  std::vector<EntitySpan> spans = extract_spans(sentence);
  for (EntitySpan& span : spans) {
    double sum = 0.0;
    for (int i = span.start; i <= span.end; ++i) sum += token_logp[i];
    span.score = sum / (span.end - span.start + 1);
  }
  return spans;
}

void apply_spans(Sentence& sentence, const std::vector<EntitySpan>& spans) {
  for (Token& token : sentence) token.ne = "O";
  for (const EntitySpan& span : spans) {
    if (span.start < 0 || span.end >= static_cast<int>(sentence.size()) ||
        span.start > span.end) {
      throw DataError("span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + "] out of range");
    }
    sentence[span.start].ne = "B-" + span.label;
    for (int i = span.start + 1; i <= span.end; ++i) {
      sentence[i].ne = "I-" + span.label;
    }
  }
}

Sentence reverse_sentence(const Sentence& sentence) {
  Sentence reversed(sentence.rbegin(), sentence.rend());
  bool tagged = std::any_of(sentence.begin(), sentence.end(),
                            [](const Token& t) { return !t.ne.empty(); });
  if (!tagged) return reversed;

  const int last = static_cast<int>(sentence.size()) - 1;
  std::vector<EntitySpan> spans = extract_spans(sentence);
  for (EntitySpan& span : spans) {
    int start = last - span.end;
    span.end = last - span.start;
    span.start = start;
  }
  apply_spans(reversed, spans);
  return reversed;
}

}  // namespace vner
