#include "vner/combiner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vner/errors.hpp"

namespace vner {

namespace {

struct Candidate {
  EntitySpan span;
  bool from_forward = false;
  bool satisfied = false;  // label's preferred direction matches the source
};

bool overlaps(const EntitySpan& a, const EntitySpan& b) {
  return a.start <= b.end && b.start <= a.end;
}

}  // namespace

CombinePolicy CombinePolicy::shipped_default() {
  CombinePolicy policy;
  policy.preference["LOC"] = Preference::BACKWARD;
  policy.preference["ORG"] = Preference::FORWARD;
  policy.preference["PER"] = Preference::FORWARD;
  policy.preference["MISC"] = Preference::SCORE;
  return policy;
}

Preference CombinePolicy::for_label(const std::string& label) const {
  auto it = preference.find(label);
  return it == preference.end() ? Preference::SCORE : it->second;
}

CombinePolicy load_policy(std::istream& in) {
  CombinePolicy policy;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string type, pref, extra;
    std::istringstream fields(line);
    if (!(fields >> type)) continue;  // blank line
    if (!(fields >> pref) || (fields >> extra)) {
      throw ParseError("expected 'TYPE FORWARD|BACKWARD|SCORE'", line_no);
    }
    Preference p;
    if (pref == "FORWARD") {
      p = Preference::FORWARD;
    } else if (pref == "BACKWARD") {
      p = Preference::BACKWARD;
    } else if (pref == "SCORE") {
      p = Preference::SCORE;
    } else {
      throw ParseError("unknown preference '" + pref + "'", line_no);
    }
    if (policy.preference.count(type)) {
      throw ParseError("duplicate type '" + type + "'", line_no);
    }
    policy.preference[type] = p;
  }
  return policy;
}

CombinePolicy load_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open policy file: " + path);
  return load_policy(in);
}

Sentence combine(const DecodeResult& forward, const DecodeResult& backward,
                 const CombinePolicy& policy) {
  const Sentence& f = forward.sentence;
  const Sentence& b = backward.sentence;
  if (f.size() != b.size()) {
    throw DataError("forward and backward decodes differ in length");
  }
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].word != b[i].word) {
      throw DataError("forward and backward decodes disagree on token " +
                      std::to_string(i) + ": '" + f[i].word + "' vs '" +
                      b[i].word + "'");
    }
  }

  std::vector<Candidate> pool;
  for (const EntitySpan& span : extract_spans(f, forward.token_logp)) {
    Preference pref = policy.for_label(span.label);
    pool.push_back({span, true,
                    pref == Preference::SCORE || pref == Preference::FORWARD});
  }
  for (const EntitySpan& span : extract_spans(b, backward.token_logp)) {
    Preference pref = policy.for_label(span.label);
    pool.push_back({span, false,
                    pref == Preference::SCORE || pref == Preference::BACKWARD});
  }

  std::sort(pool.begin(), pool.end(), [](const Candidate& a,
                                         const Candidate& b) {
    if (a.satisfied != b.satisfied) return a.satisfied;
    if (a.span.score != b.span.score) return a.span.score > b.span.score;
    int alen = a.span.end - a.span.start, blen = b.span.end - b.span.start;
    if (alen != blen) return alen > blen;
    if (a.span.start != b.span.start) return a.span.start < b.span.start;
    return a.from_forward && !b.from_forward;
  });

  std::vector<EntitySpan> accepted;
  for (const Candidate& candidate : pool) {
    bool blocked = false;
    for (const EntitySpan& winner : accepted) {
      if (overlaps(candidate.span, winner)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) accepted.push_back(candidate.span);
  }

  Sentence out = f;
  apply_spans(out, accepted);
  return out;
}

}  // namespace vner
