#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vner/corpus.hpp"

namespace vner {

struct TypeScore {
  int gold = 0;
  int predicted = 0;
  int correct = 0;  // exact (start, end, label) matches

  double precision() const;  // percent; 0 when nothing was predicted
  double recall() const;     // percent; 0 when nothing is gold
  double f1() const;         // 2PR/(P+R), 0 when P+R = 0
};

struct EvalReport {
  std::map<std::string, TypeScore> by_type;  // keyed by entity type
  TypeScore overall;                         // micro-averaged
  int tokens = 0;
  int tokens_correct = 0;

  double token_accuracy() const;  // percent
};

// Phrase-level scoring in the style of the CoNLL shared-task script: a
// predicted span counts iff an identical span exists in gold. Both sides
// must have the same sentences (count, lengths, words); a mismatch raises
// DataError naming the sentence.
EvalReport evaluate(const std::vector<Sentence>& gold,
                    const std::vector<Sentence>& predicted);

// Aligned table: Type / Precision / Recall / F1, the micro-averaged All
// row first, then types alphabetically, then token accuracy.
void print_report(std::ostream& out, const EvalReport& report);

// key=value lines for scripting.
void print_report_machine(std::ostream& out, const EvalReport& report);

}  // namespace vner
