#include "vner/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vner/errors.hpp"
#include "vner/features.hpp"

namespace vner {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// allowed[t1][y]: may tag y follow tag t1? Row K stands for BOS.
std::vector<std::vector<bool>> transition_table(const LabelSet& labels,
                                                bool enforce_iob2) {
  const int K = labels.size();
  std::vector<std::vector<bool>> allowed(K + 1, std::vector<bool>(K, true));
  if (!enforce_iob2) return allowed;
  for (int y = 0; y < K; ++y) {
    const std::string& tag = labels.tags[y];
    if (tag.size() < 3 || tag[0] != 'I') continue;
    std::string_view type = std::string_view(tag).substr(2);
    for (int t1 = 0; t1 <= K; ++t1) {
      bool ok = false;
      if (t1 < K) {
        const std::string& prev = labels.tags[t1];
        ok = prev.size() >= 3 && prev[1] == '-' &&
             std::string_view(prev).substr(2) == type;
      }
      allowed[t1][y] = ok;
    }
  }
  return allowed;
}

// Union of the static feature indices with the hashed dynamic features for
// one (t1, t2) choice — identical to hashing the concatenated string list.
FeatureVector merge_features(const FeatureVector& static_part,
                             const FeatureVector& dynamic_part) {
  FeatureVector out;
  out.indices.resize(static_part.indices.size() +
                     dynamic_part.indices.size());
  auto end = std::set_union(
      static_part.indices.begin(), static_part.indices.end(),
      dynamic_part.indices.begin(), dynamic_part.indices.end(),
      out.indices.begin());
  out.indices.resize(end - out.indices.begin());
  return out;
}

std::vector<FeatureVector> static_features(const Sentence& sentence,
                                           uint32_t dimension) {
  std::vector<FeatureVector> result;
  result.reserve(sentence.size());
  for (int j = 0; j < static_cast<int>(sentence.size()); ++j) {
    result.push_back(hash_features(extract_static(sentence, j), dimension));
  }
  return result;
}

FeatureVector position_features(const Sentence& sentence, int j,
                                const FeatureVector& static_part,
                                const std::string& t1, const std::string& t2,
                                uint32_t dimension) {
  return merge_features(
      static_part, hash_features(extract_dynamic(sentence, j, t1, t2),
                                 dimension));
}

void decode_greedy(const Model& model, const Sentence& sentence,
                   const std::vector<std::vector<bool>>& allowed,
                   std::vector<int>& tags, std::vector<double>& logp) {
  const int K = model.labels.size();
  const int T = static_cast<int>(sentence.size());
  const std::vector<FeatureVector> statics =
      static_features(sentence, model.dimension);
  for (int j = 0; j < T; ++j) {
    const std::string& t1 = j >= 1 ? model.labels.tags[tags[j - 1]] : "BOS";
    const std::string& t2 = j >= 2 ? model.labels.tags[tags[j - 2]] : "BOS";
    std::vector<double> lp = predict_log_distribution(
        model,
        position_features(sentence, j, statics[j], t1, t2, model.dimension));
    int prev = j >= 1 ? tags[j - 1] : K;  // K = BOS row
    int best = -1;
    for (int y = 0; y < K; ++y) {
      if (!allowed[prev][y]) continue;
      if (best < 0 || lp[y] > lp[best]) best = y;
    }
    tags[j] = best;
    logp[j] = lp[best];
  }
}

// Second-order Viterbi over (t-2, t-1) states. State ids pack
// (t1 * K + y) after choosing y at a position, with t1 in [0, K]
// (K = BOS) and y in [0, K).
void decode_viterbi(const Model& model, const Sentence& sentence,
                    const std::vector<std::vector<bool>>& allowed, int beam,
                    std::vector<int>& tags, std::vector<double>& logp) {
  const int K = model.labels.size();
  const int T = static_cast<int>(sentence.size());
  const std::vector<FeatureVector> statics =
      static_features(sentence, model.dimension);

  struct Entry {
    int t2, t1;       // state: tags at j-1 and j (t1 may be K = BOS)
    double score;
    int parent;       // index into the previous stage
    double logp;      // raw log-probability of the chosen tag
  };
  std::vector<std::vector<Entry>> stages(T);

  std::vector<Entry> current = {{K, K, 0.0, -1, 0.0}};  // (BOS, BOS)
  for (int j = 0; j < T; ++j) {
    const int num_states = (K + 1) * K;
    std::vector<Entry> next(num_states, Entry{0, 0, kNegInf, -1, 0.0});
    for (int c = 0; c < static_cast<int>(current.size()); ++c) {
      const Entry& state = current[c];
      if (state.score == kNegInf) continue;
      const std::string& t1 =
          state.t1 < K ? model.labels.tags[state.t1] : "BOS";
      const std::string& t2 =
          state.t2 < K ? model.labels.tags[state.t2] : "BOS";
      std::vector<double> lp = predict_log_distribution(
          model, position_features(sentence, j, statics[j], t1, t2,
                                   model.dimension));
      for (int y = 0; y < K; ++y) {
        if (!allowed[state.t1][y]) continue;
        double score = state.score + lp[y];
        Entry& slot = next[state.t1 * K + y];
        if (score > slot.score) {
          slot = {state.t1, y, score, c, lp[y]};
        }
      }
    }
    std::vector<Entry> live;
    for (const Entry& e : next) {
      if (e.score > kNegInf) live.push_back(e);
    }
    if (beam > 0 && static_cast<int>(live.size()) > beam) {
      // Keep the `beam` best; stable on state-id order for determinism.
      std::stable_sort(live.begin(), live.end(),
                       [](const Entry& a, const Entry& b) {
                         return a.score > b.score;
                       });
      live.resize(beam);
    }
    stages[j] = std::move(live);
    current = stages[j];
  }

  int best = 0;
  for (int i = 1; i < static_cast<int>(current.size()); ++i) {
    if (current[i].score > current[best].score) best = i;
  }
  for (int j = T - 1; j >= 0; --j) {
    const Entry& e = stages[j][best];
    tags[j] = e.t1;
    logp[j] = e.logp;
    best = e.parent;
  }
}

}  // namespace

DecodeResult decode(const Model& model, const PatternSet& patterns,
                    const Sentence& sentence, const DecodeConfig& config) {
  if (config.beam < 0) throw DataError("beam width must be >= 0");
  DecodeResult result;
  result.sentence = sentence;
  result.token_logp.assign(sentence.size(), 0.0);
  if (sentence.empty()) return result;

  Sentence work = sentence;
  for (Token& token : work) token.ne.clear();
  const bool backward = model.direction == Direction::BACKWARD;
  if (backward) std::reverse(work.begin(), work.end());

  // Training annotates after any reversal, so a BACKWARD decode must not
  // trust annotations computed over the forward word order.
  bool missing = std::any_of(work.begin(), work.end(), [](const Token& t) {
    return t.regexp.empty();
  });
  if (missing || backward) work = annotate(patterns, work);

  const int T = static_cast<int>(work.size());
  std::vector<int> tags(T, 0);
  std::vector<double> logp(T, 0.0);
  const std::vector<std::vector<bool>> allowed =
      transition_table(model.labels, config.enforce_iob2);
  if (config.mode == DecodeMode::GREEDY) {
    decode_greedy(model, work, allowed, tags, logp);
  } else {
    decode_viterbi(model, work, allowed, config.beam, tags, logp);
  }
  for (int j = 0; j < T; ++j) work[j].ne = model.labels.tags[tags[j]];

  if (backward) {
    work = reverse_sentence(work);  // un-reverse, with IOB repair
    std::reverse(logp.begin(), logp.end());
  }
  for (int j = 0; j < T; ++j) result.sentence[j].ne = work[j].ne;
  result.token_logp = std::move(logp);
  return result;
}

std::pair<DecodeResult, DecodeResult> decode_both(
    const Model& forward, const Model& backward, const PatternSet& patterns,
    const Sentence& sentence, const DecodeConfig& config) {
  if (!(forward.labels == backward.labels)) {
    throw DataError("forward and backward models disagree on the label set");
  }
  if (forward.pattern_fingerprint != backward.pattern_fingerprint) {
    throw DataError(
        "forward and backward models disagree on the pattern fingerprint");
  }
  return {decode(forward, patterns, sentence, config),
          decode(backward, patterns, sentence, config)};
}

}  // namespace vner
