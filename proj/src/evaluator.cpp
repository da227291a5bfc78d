#include "vner/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "vner/errors.hpp"

namespace vner {

namespace {

const std::string& tag_or_o(const std::string& tag) {
  static const std::string o = "O";
  return tag.empty() ? o : tag;
}

void row(std::ostream& out, const std::string& name, const TypeScore& score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-6s %9.2f %9.2f %9.2f\n", name.c_str(),
                score.precision(), score.recall(), score.f1());
  out << buf;
}

void kv(std::ostream& out, const std::string& key, const TypeScore& score) {
  char buf[32];
  out << key << ".gold=" << score.gold << '\n';
  out << key << ".predicted=" << score.predicted << '\n';
  out << key << ".correct=" << score.correct << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", score.precision());
  out << key << ".precision=" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", score.recall());
  out << key << ".recall=" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", score.f1());
  out << key << ".f1=" << buf << '\n';
}

}  // namespace

double TypeScore::precision() const {
  return predicted == 0 ? 0.0 : 100.0 * correct / predicted;
}

double TypeScore::recall() const {
  return gold == 0 ? 0.0 : 100.0 * correct / gold;
}

double TypeScore::f1() const {
  double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double EvalReport::token_accuracy() const {
  return tokens == 0 ? 0.0 : 100.0 * tokens_correct / tokens;
}

EvalReport evaluate(const std::vector<Sentence>& gold,
                    const std::vector<Sentence>& predicted) {
  if (gold.size() != predicted.size()) {
    throw DataError("sentence count mismatch: " + std::to_string(gold.size()) +
                    " gold vs " + std::to_string(predicted.size()) +
                    " predicted");
  }
  EvalReport report;
  for (size_t s = 0; s < gold.size(); ++s) {
    const Sentence& g = gold[s];
    const Sentence& p = predicted[s];
    if (g.size() != p.size()) {
      throw DataError("sentence " + std::to_string(s + 1) +
                      ": token count mismatch");
    }
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i].word != p[i].word) {
        throw DataError("sentence " + std::to_string(s + 1) + ": token " +
                        std::to_string(i + 1) + " differs ('" + g[i].word +
                        "' vs '" + p[i].word + "')");
      }
      ++report.tokens;
      if (tag_or_o(g[i].ne) == tag_or_o(p[i].ne)) ++report.tokens_correct;
    }
    std::vector<EntitySpan> gold_spans = extract_spans(g);
    std::vector<EntitySpan> pred_spans = extract_spans(p);
    for (const EntitySpan& span : gold_spans) {
      ++report.by_type[span.label].gold;
    }
    for (const EntitySpan& span : pred_spans) {
      TypeScore& score = report.by_type[span.label];
      ++score.predicted;
      bool hit = std::any_of(gold_spans.begin(), gold_spans.end(),
                             [&](const EntitySpan& g_span) {
                               return g_span.same_span(span);
                             });
      if (hit) ++score.correct;
    }
  }
  for (const auto& [type, score] : report.by_type) {
    report.overall.gold += score.gold;
    report.overall.predicted += score.predicted;
    report.overall.correct += score.correct;
  }
  return report;
}

void print_report(std::ostream& out, const EvalReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-6s %9s %9s %9s\n", "Type", "Precision",
                "Recall", "F1");
  out << buf;
  row(out, "All", report.overall);
  for (const auto& [type, score] : report.by_type) {
    row(out, type, score);
  }
  std::snprintf(buf, sizeof buf, "Token accuracy: %.2f%%\n",
                report.token_accuracy());
  out << buf;
}

void print_report_machine(std::ostream& out, const EvalReport& report) {
  kv(out, "all", report.overall);
  for (const auto& [type, score] : report.by_type) {
    kv(out, type, score);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", report.token_accuracy());
  out << "token_accuracy=" << buf << '\n';
}

}  // namespace vner
