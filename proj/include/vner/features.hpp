#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vner/corpus.hpp"

namespace vner {

// Everything known when predicting the tag at one position: the sentence,
// the position, and the two previously assigned tags ("BOS" before the
// sentence start).
struct Context {
  const Sentence* sentence = nullptr;
  int position = 0;
  std::string t1 = "BOS";  // tag at position - 1
  std::string t2 = "BOS";  // tag at position - 2
};

// Hashed binary feature indices: sorted, deduplicated, all < D.
struct FeatureVector {
  std::vector<uint32_t> indices;
};

// The full feature inventory for a context, as namespaced "name=value"
// strings. Static features (everything not involving prior tags) come
// first, then t-1, t-2 and w0+t-1, so extract_static + extract_dynamic
// is the same list split in two — the decoder re-evaluates only the
// dynamic part when scanning tag histories.
//
// Out-of-bounds neighbors read as "BOS"/"EOS"; a token without a regexp
// annotation reads as "NA"; surface words that would collide with a
// sentinel (or that start with a backslash) are escaped with a '\' prefix.
// Missing POS/CHUNK on an accessed token raises FeatureError.
std::vector<std::string> extract(const Context& context);
std::vector<std::string> extract_static(const Sentence& sentence,
                                        int position);
std::vector<std::string> extract_dynamic(const Sentence& sentence,
                                         int position, const std::string& t1,
                                         const std::string& t2);

// FNV-1a 64-bit over the UTF-8 bytes of each string, masked to D - 1.
// D must be a power of two. Duplicate indices are collapsed.
FeatureVector hash_features(const std::vector<std::string>& features,
                            uint32_t dimension);

}  // namespace vner
