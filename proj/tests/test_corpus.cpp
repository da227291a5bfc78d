#include "vner/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "doctest.h"
#include "support.hpp"
#include "vner/errors.hpp"

using namespace vner;
using testsupport::tok;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Sentence> parse(const std::string& text) {
  std::istringstream in(text);
  return read_conll(in);
}

Sentence with_tags(const std::vector<std::string>& tags) {
  Sentence s;
  for (size_t i = 0; i < tags.size(); ++i) {
    s.push_back(tok("w" + std::to_string(i), "N", "B-NP", tags[i]));
  }
  return s;
}

std::vector<std::string> tags_of(const Sentence& s) {
  std::vector<std::string> tags;
  for (const Token& t : s) tags.push_back(t.ne);
  return tags;
}

}  // namespace

TEST_CASE("NE tag syntax") {
  CHECK(is_valid_ne_tag("O"));
  CHECK(is_valid_ne_tag("B-LOC"));
  CHECK(is_valid_ne_tag("I-MISC"));
  CHECK(is_valid_ne_tag("B-Per_2"));
  CHECK_FALSE(is_valid_ne_tag(""));
  CHECK_FALSE(is_valid_ne_tag("o"));
  CHECK_FALSE(is_valid_ne_tag("B-"));
  CHECK_FALSE(is_valid_ne_tag("X-LOC"));
  CHECK_FALSE(is_valid_ne_tag("B_LOC"));
  CHECK_FALSE(is_valid_ne_tag("B-LOC-X"));
  CHECK_FALSE(is_valid_ne_tag("BOS"));
}

TEST_CASE("default reader infers two to four columns per line") {
  std::vector<Sentence> got = parse(
      "a\tX\n"
      "b\tY\tB-NP\n"
      "c\tZ\tI-NP\tB-LOC\n");
  REQUIRE(got.size() == 1);
  REQUIRE(got[0].size() == 3);
  CHECK(got[0][0] == tok("a", "X", "", ""));
  CHECK(got[0][1] == tok("b", "Y", "B-NP", ""));
  CHECK(got[0][2] == tok("c", "Z", "I-NP", "B-LOC"));
}

TEST_CASE("blank lines split sentences; extra blanks and CRLF are harmless") {
  std::vector<Sentence> got = parse(
      "a N\r\n"
      "b  N   B-NP\r\n"
      "\r\n"
      "\n"
      "c\tN\n"
      "\n"
      "\n");
  REQUIRE(got.size() == 2);
  CHECK(got[0].size() == 2);
  CHECK(got[1].size() == 1);
  CHECK(got[0][1].chunk == "B-NP");
}

TEST_CASE("reader normalizes IOB1-style input to IOB2") {
  std::vector<Sentence> got = parse(
      "a N P I-LOC\n"
      "b N P I-LOC\n"
      "c N P I-ORG\n");
  CHECK(tags_of(got[0]) ==
        std::vector<std::string>{"B-LOC", "I-LOC", "B-ORG"});
}

TEST_CASE("reader rejects malformed lines with their line number") {
  CHECK_THROWS_AS(parse("lonely\n"), ParseError);
  CHECK_THROWS_AS(parse("a b c d e\n"), ParseError);
  CHECK_THROWS_AS(parse("a N P NotATag\n"), ParseError);
  try {
    parse("a N\nb N\nc N P Q R\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("(line 3)") != std::string::npos);
  }
}

TEST_CASE("explicit column specs demand an exact field count") {
  std::istringstream in("a N B-NP orgPress B-ORG\n");
  std::vector<Sentence> got = read_conll(in, ColumnSpec::annotated());
  REQUIRE(got.size() == 1);
  CHECK(got[0][0] == tok("a", "N", "B-NP", "B-ORG", "orgPress"));

  std::istringstream bad("a N B-NP B-ORG\n");
  CHECK_THROWS_AS(read_conll(bad, ColumnSpec::annotated()), ParseError);
}

TEST_CASE("writer fills absent annotations with placeholders") {
  Sentence s = {tok("a", "", "", ""), tok("b", "N", "B-NP", "B-LOC")};
  std::ostringstream out;
  write_conll(out, {s}, ColumnSpec::annotated());
  CHECK(out.str() ==
        "a\t-\t-\tNA\tO\n"
        "b\tN\tB-NP\tNA\tB-LOC\n"
        "\n");
}

TEST_CASE("read then write reproduces the evaluator fixture byte for byte") {
  const std::string path = std::string(TEST_DATA_DIR) + "/eval_gold.conll";
  const std::string original = slurp(path);
  std::istringstream in(original);
  std::vector<Sentence> sentences = read_conll(in, ColumnSpec::standard());
  REQUIRE(sentences.size() == 10);
  std::ostringstream out;
  write_conll(out, sentences, ColumnSpec::standard());
  CHECK(out.str() == original);
}

TEST_CASE("span extraction handles breaks, changes and orphans") {
  auto spans = extract_spans(with_tags({"B-LOC", "I-LOC", "O", "B-PER"}));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].same_span({0, 1, "LOC"}));
  CHECK(spans[1].same_span({3, 3, "PER"}));

  // Orphan I- opens a span; a type change closes the previous one.
  spans = extract_spans(with_tags({"O", "I-ORG", "I-ORG", "I-LOC"}));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].same_span({1, 2, "ORG"}));
  CHECK(spans[1].same_span({3, 3, "LOC"}));

  // B- after I- of the same type starts a fresh span.
  spans = extract_spans(with_tags({"B-PER", "B-PER"}));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].same_span({0, 0, "PER"}));
  CHECK(spans[1].same_span({1, 1, "PER"}));
}

TEST_CASE("span extraction agrees with the reference scanner") {
  std::mt19937 rng(20101980);
  for (int trial = 0; trial < 500; ++trial) {
    int length = testsupport::uniform_int(rng, 0, 12);
    std::vector<std::string> tags =
        testsupport::random_iob2(rng, length, {"LOC", "ORG", "PER", "MISC"});
    // Corrupt some tags into orphans to exercise the repair path.
    for (std::string& tag : tags) {
      if (testsupport::uniform_int(rng, 0, 9) == 0 && tag == "O") {
        tag = "I-PER";
      }
    }
    std::vector<EntitySpan> got = extract_spans(with_tags(tags));
    auto want = testsupport::reference_spans(tags);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CAPTURE(trial);
      CHECK(got[i].start == std::get<0>(want[i]));
      CHECK(got[i].end == std::get<1>(want[i]));
      CHECK(got[i].label == std::get<2>(want[i]));
    }
  }
}

TEST_CASE("scored spans average their tokens' log-probabilities") {
  Sentence s = with_tags({"B-LOC", "I-LOC", "O", "B-PER"});
  std::vector<EntitySpan> spans =
    extract_spans(s, {-0.5, -1.5, -9.0, -0.25});
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].score == doctest::Approx(-1.0));
  CHECK(spans[1].score == doctest::Approx(-0.25));
  CHECK_THROWS_AS(extract_spans(s, {-0.5}), DataError);
}

TEST_CASE("apply_spans writes over an all-O baseline and checks bounds") {
  Sentence s = with_tags({"B-ORG", "I-ORG", "O"});
  apply_spans(s, {{1, 2, "LOC", 0.0}});
  CHECK(tags_of(s) == std::vector<std::string>{"O", "B-LOC", "I-LOC"});
  CHECK_THROWS_AS(apply_spans(s, {{2, 3, "LOC", 0.0}}), DataError);
  CHECK_THROWS_AS(apply_spans(s, {{-1, 0, "LOC", 0.0}}), DataError);
  CHECK_THROWS_AS(apply_spans(s, {{2, 1, "LOC", 0.0}}), DataError);
}

TEST_CASE("reversal mirrors spans and keeps IOB2 validity") {
  Sentence s;
  s.push_back(tok("a", "N", "B-NP", "O"));
  s.push_back(tok("b", "N", "B-NP", "B-LOC"));
  s.push_back(tok("c", "N", "B-NP", "I-LOC"));
  s.push_back(tok("d", "N", "B-NP", "O"));
  s.push_back(tok("e", "N", "B-NP", "B-PER"));
  Sentence r = reverse_sentence(s);
  CHECK(r[0].word == "e");
  CHECK(r[4].word == "a");
  CHECK(tags_of(r) ==
        std::vector<std::string>{"B-PER", "O", "B-LOC", "I-LOC", "O"});
}

TEST_CASE("reversing an untagged sentence only reorders tokens") {
  Sentence s = {tok("a", "X", "C1", ""), tok("b", "Y", "C2", "")};
  Sentence r = reverse_sentence(s);
  CHECK(r[0] == s[1]);
  CHECK(r[1] == s[0]);
}

TEST_CASE("double reversal is the identity on valid IOB2 sentences") {
  std::mt19937 rng(15102003);
  for (int trial = 0; trial < 500; ++trial) {
    int length = testsupport::uniform_int(rng, 1, 10);
    Sentence s = with_tags(testsupport::random_iob2(
        rng, length, {"LOC", "ORG", "PER", "MISC"}));
    CAPTURE(trial);
    CHECK(reverse_sentence(reverse_sentence(s)) == s);
  }
}
