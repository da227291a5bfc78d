#pragma once

#include <utility>
#include <vector>

#include "vner/corpus.hpp"
#include "vner/model.hpp"
#include "vner/tokregex.hpp"

namespace vner {

enum class DecodeMode { GREEDY, VITERBI };

struct DecodeConfig {
  DecodeMode mode = DecodeMode::GREEDY;
  int beam = 0;              // VITERBI: states kept per position; 0 = all
  bool enforce_iob2 = true;  // mask I-X after anything but B-X / I-X
};

struct DecodeResult {
  Sentence sentence;               // input copy with NE tags overwritten
  std::vector<double> token_logp;  // log P of the chosen tag, per token
};

// Tags one sentence with the model, honoring its direction: BACKWARD
// models decode the reversed sentence and the output is un-reversed with
// IOB repair. The pattern set must be the one the model was trained with
// (the model records only its fingerprint, so the caller supplies the set);
// regexp annotations are computed if any token lacks one — and always
// recomputed for BACKWARD models, whose training annotates the reversed
// word order.
//
// GREEDY picks the argmax tag left to right given the two already-chosen
// tags. VITERBI maximizes the summed tag log-probabilities over the
// (t-2, t-1) state lattice, exactly when beam = 0. Ties break to the
// lowest label index; recorded log-probabilities are the model's raw
// (unmasked) values.
DecodeResult decode(const Model& model, const PatternSet& patterns,
                    const Sentence& sentence, const DecodeConfig& config = {});

// Independent forward and backward decodes of the same sentence. The two
// models must agree on label set and pattern fingerprint.
std::pair<DecodeResult, DecodeResult> decode_both(
    const Model& forward, const Model& backward, const PatternSet& patterns,
    const Sentence& sentence, const DecodeConfig& config = {});

}  // namespace vner
