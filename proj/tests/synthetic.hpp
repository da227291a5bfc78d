// Synthetic NER corpus generator for the end-to-end experiment.
//
// Sentences are sampled from templates built around the shipped pattern
// lexicons. The templates are engineered so that no single decode
// direction can read every entity from its local context:
//
//   T1   press ORG     [press  Name]          B-ORG I-ORG
//   T2a  admin ORG     [HEAD   prov  Name]    B-ORG I-ORG I-ORG
//   T2b  admin decoy   [HEAD   prov  filler]  O     O     O
//   T3   province LOC  [prov   Name]          B-LOC I-LOC
//   T4   person PER    [pcue   Name]          O     B-PER
//   T5   prize MISC    [giải   Name]          B-MISC I-MISC
//   T6a  place pair    [tại X và prov Y]      O B-LOC O B-LOC I-LOC
//   T6b  prize pair    [tại X và giải Y]      O B-MISC O B-MISC I-MISC
//   T7   filler only
//
// T2a vs T2b is only separable at the HEAD token through the regexp
// column (orgAdmin matches [HEAD prov Name] but not [HEAD prov filler]),
// so ablating the pattern features must cost ORG precision. In T6 the
// type of X is invisible to a forward pass (its right context stops at
// "và") but trivial for a backward pass, whose tag history has already
// consumed the typed cue beyond it. Names are split into disjoint train
// and test pools, forcing the models to generalize from context, shape,
// pattern, and tag-history features rather than memorized words.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vner/corpus.hpp"

namespace testsupport {

struct SyntheticData {
  std::vector<vner::Sentence> train;
  std::vector<vner::Sentence> test;
};

namespace synth_detail {

struct Lexicon {
  std::vector<std::string> press = {"báo", "tờ", "tạp_chí", "đài",
                                    "thông_tấn_xã"};
  std::vector<std::string> province = {"tỉnh", "thành_phố", "quận", "huyện",
                                       "xã"};
  std::vector<std::string> heads = {"UBND", "HĐND", "VKSND",
                                    "TAND", "MTTQ",  "BCH"};
  std::vector<std::string> person = {"ông", "bà", "anh", "chị"};
  std::vector<std::string> fillers = {"đã",     "sẽ",        "đang",
                                      "rất",    "cũng",      "vẫn",
                                      "thường", "nói",       "biết",
                                      "hôm_nay", "phát_triển", "quan_trọng"};
  std::vector<std::string> filler_pos = {"R", "R", "R", "R", "R", "R",
                                         "R", "V", "V", "N", "V", "A"};
};

inline uint32_t draw(std::mt19937& rng, uint32_t n) { return rng() % n; }

template <typename T>
const T& any(std::mt19937& rng, const std::vector<T>& pool) {
  return pool[draw(rng, static_cast<uint32_t>(pool.size()))];
}

inline vner::Token word_token(std::string word, std::string pos,
                              std::string chunk, std::string ne) {
  vner::Token t;
  t.word = std::move(word);
  t.pos = std::move(pos);
  t.chunk = std::move(chunk);
  t.ne = std::move(ne);
  return t;
}

inline vner::Token name_token(const std::string& name, const std::string& ne) {
  return word_token(name, "Np", "B-NP", ne);
}

inline vner::Token cue_token(const std::string& word, const std::string& ne) {
  return word_token(word, "N", "B-NP", ne);
}

inline void add_filler(std::mt19937& rng, const Lexicon& lex,
                       vner::Sentence& s) {
  uint32_t i = draw(rng, static_cast<uint32_t>(lex.fillers.size()));
  s.push_back(word_token(lex.fillers[i], lex.filler_pos[i], "O", "O"));
}

// All two-syllable combinations, deterministically shuffled (Fisher-Yates
// on rng() % n, so the split does not depend on library internals).
inline std::vector<std::string> name_pool(std::mt19937& rng) {
  static const std::vector<std::string> syllables = {
      "An",   "Bình",  "Châu", "Dương", "Giang", "Hải",  "Hòa",
      "Huy",  "Khánh", "Lam",  "Linh",  "Minh",  "Nam",  "Ngọc",
      "Phong", "Quang", "Sơn",  "Thảo",  "Trung", "Yến"};
  std::vector<std::string> names;
  for (const std::string& a : syllables) {
    for (const std::string& b : syllables) {
      names.push_back(a + "_" + b);
    }
  }
  for (size_t i = names.size() - 1; i > 0; --i) {
    std::swap(names[i], names[draw(rng, static_cast<uint32_t>(i + 1))]);
  }
  return names;
}

inline vner::Sentence make_sentence(std::mt19937& rng, const Lexicon& lex,
                                    const std::vector<std::string>& names) {
  vner::Sentence s;
  uint32_t pattern = draw(rng, 100);
  int leading = 1 + static_cast<int>(draw(rng, 3));
  int trailing = static_cast<int>(draw(rng, 3));
  for (int i = 0; i < leading; ++i) add_filler(rng, lex, s);

  if (pattern < 15) {  // T1: press organization
    s.push_back(cue_token(any(rng, lex.press), "B-ORG"));
    s.push_back(name_token(any(rng, names), "I-ORG"));
  } else if (pattern < 23) {  // T2a: administrative organization
    s.push_back(word_token(any(rng, lex.heads), "Ny", "B-NP", "B-ORG"));
    s.push_back(cue_token(any(rng, lex.province), "I-ORG"));
    s.push_back(name_token(any(rng, names), "I-ORG"));
  } else if (pattern < 30) {  // T2b: decoy — same head, no entity
    s.push_back(word_token(any(rng, lex.heads), "Ny", "B-NP", "O"));
    s.push_back(cue_token(any(rng, lex.province), "O"));
    add_filler(rng, lex, s);
  } else if (pattern < 52) {  // T3: province location
    s.push_back(cue_token(any(rng, lex.province), "B-LOC"));
    s.push_back(name_token(any(rng, names), "I-LOC"));
  } else if (pattern < 72) {  // T4: person
    s.push_back(word_token(any(rng, lex.person), "Nc", "B-NP", "O"));
    s.push_back(name_token(any(rng, names), "B-PER"));
  } else if (pattern < 82) {  // T5: prize
    s.push_back(cue_token("giải", "B-MISC"));
    s.push_back(name_token(any(rng, names), "I-MISC"));
  } else if (pattern < 94) {  // T6: "tại X và <cue> Y" — X typed by Y's cue
    bool place = pattern < 88;
    const char* b = place ? "B-LOC" : "B-MISC";
    const char* i = place ? "I-LOC" : "I-MISC";
    s.push_back(word_token("tại", "E", "B-PP", "O"));
    s.push_back(name_token(any(rng, names), b));
    s.push_back(word_token("và", "C", "O", "O"));
    s.push_back(cue_token(place ? any(rng, lex.province) : "giải", b));
    s.push_back(name_token(any(rng, names), i));
  } else {  // T7: no entity at all
    add_filler(rng, lex, s);
  }

  for (int i = 0; i < trailing; ++i) add_filler(rng, lex, s);
  return s;
}

}  // namespace synth_detail

// Deterministic for a fixed (train_count, test_count, seed) triple.
inline SyntheticData make_synthetic(int train_count, int test_count,
                                    uint32_t seed) {
  using namespace synth_detail;
  std::mt19937 rng(seed);
  Lexicon lex;
  std::vector<std::string> names = name_pool(rng);
  std::vector<std::string> train_names(names.begin(), names.begin() + 280);
  std::vector<std::string> test_names(names.begin() + 280, names.end());

  SyntheticData data;
  for (int i = 0; i < train_count; ++i) {
    data.train.push_back(make_sentence(rng, lex, train_names));
  }
  for (int i = 0; i < test_count; ++i) {
    data.test.push_back(make_sentence(rng, lex, test_names));
  }
  return data;
}

}  // namespace testsupport
