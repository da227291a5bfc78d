#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "vner/corpus.hpp"
#include "vner/decoder.hpp"

namespace vner {

enum class Preference { FORWARD, BACKWARD, SCORE };

// Per-entity-type choice of which decode direction to trust; types not
// listed fall back to SCORE (higher mean log-probability wins).
struct CombinePolicy {
  std::map<std::string, Preference> preference;

  // LOC: BACKWARD, ORG/PER: FORWARD, MISC: SCORE — the directional
  // strengths observed when comparing the two models on held-out data.
  static CombinePolicy shipped_default();

  Preference for_label(const std::string& label) const;
};

// Policy file: one `TYPE FORWARD|BACKWARD|SCORE` per line, '#' comments.
CombinePolicy load_policy(std::istream& in);
CombinePolicy load_policy_file(const std::string& path);

// Entity-level merge of a forward and a backward decode of the same token
// sequence. Spans from both sides are pooled and accepted greedily in
// priority order — preference-satisfied spans first, then higher score,
// longer span, earlier start, forward source — skipping any span that
// overlaps an accepted one. Winners are written over an all-O baseline.
Sentence combine(const DecodeResult& forward, const DecodeResult& backward,
                 const CombinePolicy& policy);

}  // namespace vner
