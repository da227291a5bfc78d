// Shared test utilities: small fixture builders, independent reference
// implementations used as oracles, and a finite-difference gradient check.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "vner/corpus.hpp"
#include "vner/decoder.hpp"
#include "vner/features.hpp"
#include "vner/model.hpp"
#include "vner/optimizer.hpp"
#include "vner/tokregex.hpp"

namespace testsupport {

using vner::Sentence;
using vner::Token;

inline Token tok(std::string word, std::string pos = "N",
                 std::string chunk = "B-NP", std::string ne = "",
                 std::string regexp = "") {
  Token t;
  t.word = std::move(word);
  t.pos = std::move(pos);
  t.chunk = std::move(chunk);
  t.ne = std::move(ne);
  t.regexp = std::move(regexp);
  return t;
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& pool) {
  return pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)];
}

// A random valid IOB2 tag sequence over the given types.
inline std::vector<std::string> random_iob2(std::mt19937& rng, int length,
                                            const std::vector<std::string>&
                                                types) {
  std::vector<std::string> tags;
  int i = 0;
  while (i < length) {
    if (uniform_int(rng, 0, 2) == 0) {
      const std::string& type = pick(rng, types);
      int span = std::min(length - i, uniform_int(rng, 1, 3));
      tags.push_back("B-" + type);
      for (int k = 1; k < span; ++k) tags.push_back("I-" + type);
      i += span;
    } else {
      tags.push_back("O");
      ++i;
    }
  }
  return tags;
}

// Independent span reader: explicitly repairs the sequence to IOB2 first,
// then cuts at every B- or type change.
inline std::vector<std::tuple<int, int, std::string>> reference_spans(
    const std::vector<std::string>& tags) {
  std::vector<std::string> fixed = tags;
  for (size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i].rfind("I-", 0) == 0) {
      std::string type = fixed[i].substr(2);
      bool chained = i > 0 && (fixed[i - 1] == "B-" + type ||
                               fixed[i - 1] == "I-" + type);
      if (!chained) fixed[i] = "B-" + type;
    }
  }
  std::vector<std::tuple<int, int, std::string>> spans;
  for (size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i].rfind("B-", 0) != 0) continue;
    std::string type = fixed[i].substr(2);
    size_t j = i;
    while (j + 1 < fixed.size() && fixed[j + 1] == "I-" + type) ++j;
    spans.emplace_back(static_cast<int>(i), static_cast<int>(j), type);
    i = j;
  }
  return spans;
}

// Central finite differences around x.
inline std::vector<double> fd_gradient(vner::ObjectiveFunction& f,
                                       const std::vector<double>& x,
                                       double eps = 1e-6) {
  std::vector<double> g(x.size()), scratch(x.size());
  std::vector<double> point = x;
  for (size_t i = 0; i < x.size(); ++i) {
    point[i] = x[i] + eps;
    double up = f.evaluate(point, scratch);
    point[i] = x[i] - eps;
    double down = f.evaluate(point, scratch);
    point[i] = x[i];
    g[i] = (up - down) / (2 * eps);
  }
  return g;
}

// Oracle for find_all_matches: try every (position, pattern) pair.
inline std::vector<vner::Match> brute_force_matches(
    const vner::PatternSet& set, const Sentence& sentence, int lo, int hi) {
  std::vector<vner::Match> matches;
  for (int pos = lo; pos <= hi; ++pos) {
    for (const vner::TokenPattern& pattern : set.patterns) {
      auto m = vner::match_at(set, pattern, sentence, pos);
      if (m && m->end <= hi) matches.push_back(*m);
    }
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const vner::Match& a, const vner::Match& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.end - a.start > b.end - b.start;
                   });
  return matches;
}

// Reference recursive annotator, written around an explicit best-match scan
// rather than the library's ordered list.
inline void reference_annotate_range(const vner::PatternSet& set,
                                     const Sentence& sentence,
                                     std::vector<std::string>& regexp, int lo,
                                     int hi) {
  if (lo > hi) return;
  bool found = false;
  vner::Match best{"", 0, 0};
  int best_priority = 0;
  for (int pos = lo; pos <= hi; ++pos) {
    for (size_t p = 0; p < set.patterns.size(); ++p) {
      auto m = vner::match_at(set, set.patterns[p], sentence, pos);
      if (!m || m->end > hi) continue;
      int len = m->end - m->start + 1;
      int best_len = best.end - best.start + 1;
      bool better =
          !found || len > best_len ||
          (len == best_len &&
           (m->start < best.start ||
            (m->start == best.start &&
             static_cast<int>(p) < best_priority)));
      if (better) {
        best = *m;
        best_priority = static_cast<int>(p);
        found = true;
      }
    }
  }
  if (!found) return;
  for (int i = best.start; i <= best.end; ++i) regexp[i] = best.pattern;
  reference_annotate_range(set, sentence, regexp, lo, best.start - 1);
  reference_annotate_range(set, sentence, regexp, best.end + 1, hi);
}

inline std::vector<std::string> reference_annotate(const vner::PatternSet& set,
                                                   const Sentence& sentence) {
  std::vector<std::string> regexp(sentence.size(), "NA");
  if (!sentence.empty()) {
    reference_annotate_range(set, sentence, regexp, 0,
                             static_cast<int>(sentence.size()) - 1);
  }
  return regexp;
}

// Exhaustive search over all K^T tag sequences; returns the best achievable
// score (sum of per-position log-probabilities under the sequence's own
// history), honoring IOB2 constraints when asked.
inline double exhaustive_best_score(const vner::Model& model,
                                    const Sentence& sentence,
                                    bool enforce_iob2) {
  const int K = model.labels.size();
  const int T = static_cast<int>(sentence.size());
  std::vector<int> seq(T, 0);
  double best = -std::numeric_limits<double>::infinity();
  auto valid_after = [&](const std::string& prev, const std::string& cur) {
    if (!enforce_iob2 || cur.rfind("I-", 0) != 0) return true;
    std::string type = cur.substr(2);
    return prev == "B-" + type || prev == "I-" + type;
  };
  while (true) {
    bool ok = true;
    double score = 0.0;
    for (int j = 0; j < T && ok; ++j) {
      const std::string& cur = model.labels.tags[seq[j]];
      const std::string prev = j >= 1 ? model.labels.tags[seq[j - 1]] : "BOS";
      if (!valid_after(prev, cur)) {
        ok = false;
        break;
      }
      vner::Context ctx;
      ctx.sentence = &sentence;
      ctx.position = j;
      ctx.t1 = prev;
      ctx.t2 = j >= 2 ? model.labels.tags[seq[j - 2]] : "BOS";
      vner::FeatureVector fv =
          vner::hash_features(vner::extract(ctx), model.dimension);
      score += vner::predict_log_distribution(model, fv)[seq[j]];
    }
    if (ok) best = std::max(best, score);
    int j = T - 1;
    while (j >= 0 && seq[j] == K - 1) seq[j--] = 0;
    if (j < 0) break;
    ++seq[j];
  }
  return best;
}

}  // namespace testsupport
