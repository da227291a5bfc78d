#include "vner/features.hpp"

#include <algorithm>

#include "vner/errors.hpp"
#include "vner/hash.hpp"
#include "vner/shapes.hpp"

namespace vner {

namespace {

const std::string kBos = "BOS";
const std::string kEos = "EOS";
const std::string kNa = "NA";

// The sentinels and the regexp placeholder double as feature values, so a
// surface word spelled like one of them (or starting with the escape
// character itself) is prefixed with '\'.
std::string escape_word(const std::string& word) {
  if (word == kBos || word == kEos || word == kNa ||
      (!word.empty() && word[0] == '\\')) {
    return "\\" + word;
  }
  return word;
}

// Feature values of one token slot (current or neighbor).
struct Slot {
  std::string w, p, r;
};

Slot slot_at(const Sentence& sentence, int i) {
  if (i < 0) return {kBos, kBos, kBos};
  if (i >= static_cast<int>(sentence.size())) return {kEos, kEos, kEos};
  const Token& token = sentence[i];
  if (token.pos.empty()) throw FeatureError("POS");
  return {escape_word(token.word), token.pos,
          token.regexp.empty() ? kNa : token.regexp};
}

void check_position(const Sentence& sentence, int position) {
  if (position < 0 || position >= static_cast<int>(sentence.size())) {
    throw DataError("feature position " + std::to_string(position) +
                    " out of range");
  }
}

void emit(std::vector<std::string>& out, const char* name,
          const std::string& value) {
  std::string s = name;
  s += '=';
  s += value;
  out.push_back(std::move(s));
}

void emit2(std::vector<std::string>& out, const char* name,
           const std::string& a, const std::string& b) {
  std::string s = name;
  s += '=';
  s += a;
  s += '|';
  s += b;
  out.push_back(std::move(s));
}

}  // namespace

std::vector<std::string> extract_static(const Sentence& sentence,
                                        int position) {
  check_position(sentence, position);
  const Token& token = sentence[position];
  if (token.chunk.empty()) throw FeatureError("CHUNK");

  const Slot cur = slot_at(sentence, position);
  const Slot prev = slot_at(sentence, position - 1);
  const Slot next = slot_at(sentence, position + 1);

  std::vector<std::string> out;
  out.reserve(32);
  emit(out, "w0", cur.w);
  emit(out, "p0", cur.p);
  emit(out, "c0", token.chunk);
  emit(out, "sh0", std::string(shape_name(canonical_shape(token.word))));
  for (Shape shape : shape_predicates(token.word)) {
    emit(out, "shp", std::string(shape_name(shape)));
  }
  emit(out, "w-1", prev.w);
  emit2(out, "w0+w-1", cur.w, prev.w);
  emit(out, "w+1", next.w);
  emit2(out, "w0+w+1", cur.w, next.w);
  emit(out, "p-1", prev.p);
  emit2(out, "p0+p-1", cur.p, prev.p);
  emit(out, "p+1", next.p);
  emit2(out, "p0+p+1", cur.p, next.p);
  emit2(out, "p-1+p+1", prev.p, next.p);
  emit(out, "r0", cur.r);
  emit(out, "r-1", prev.r);
  emit2(out, "r0+r-1", cur.r, prev.r);
  emit(out, "r+1", next.r);
  emit2(out, "r0+r+1", cur.r, next.r);
  emit2(out, "w0+r0", cur.w, cur.r);
  emit2(out, "w0+r-1", cur.w, prev.r);
  emit2(out, "w0+r+1", cur.w, next.r);
  emit2(out, "p0+r0", cur.p, cur.r);
  emit2(out, "p0+r-1", cur.p, prev.r);
  emit2(out, "p0+r+1", cur.p, next.r);
  return out;
}

std::vector<std::string> extract_dynamic(const Sentence& sentence,
                                         int position, const std::string& t1,
                                         const std::string& t2) {
  check_position(sentence, position);
  std::vector<std::string> out;
  out.reserve(3);
  emit(out, "t-1", t1);
  emit(out, "t-2", t2);
  emit2(out, "w0+t-1", escape_word(sentence[position].word), t1);
  return out;
}

std::vector<std::string> extract(const Context& context) {
  if (context.sentence == nullptr) throw DataError("context has no sentence");
  std::vector<std::string> out =
      extract_static(*context.sentence, context.position);
  std::vector<std::string> dynamic = extract_dynamic(
      *context.sentence, context.position, context.t1, context.t2);
  out.insert(out.end(), std::make_move_iterator(dynamic.begin()),
             std::make_move_iterator(dynamic.end()));
  return out;
}

FeatureVector hash_features(const std::vector<std::string>& features,
                            uint32_t dimension) {
  if (dimension == 0 || (dimension & (dimension - 1)) != 0) {
    throw DataError("feature dimension must be a power of two, got " +
                    std::to_string(dimension));
  }
  FeatureVector vec;
  vec.indices.reserve(features.size());
  for (const std::string& feature : features) {
    vec.indices.push_back(
        static_cast<uint32_t>(fnv1a64(feature) & (dimension - 1)));
  }
  std::sort(vec.indices.begin(), vec.indices.end());
  vec.indices.erase(std::unique(vec.indices.begin(), vec.indices.end()),
                    vec.indices.end());
  return vec;
}

}  // namespace vner
