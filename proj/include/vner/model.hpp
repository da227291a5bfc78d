#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vner/corpus.hpp"
#include "vner/features.hpp"
#include "vner/optimizer.hpp"
#include "vner/tokregex.hpp"

namespace vner {

// Ordered NE tag inventory. The order is part of the model (serialized and
// used for deterministic tie-breaking), so "O" sits deliberately at index 0.
struct LabelSet {
  std::vector<std::string> tags;

  static LabelSet conll_default();  // O, B/I x LOC, MISC, ORG, PER

  int size() const { return static_cast<int>(tags.size()); }
  int index_of(std::string_view tag) const;  // -1 when unknown

  bool operator==(const LabelSet&) const = default;
};

enum class Direction : uint8_t { FORWARD = 0, BACKWARD = 1 };

// Multinomial logistic regression over the hashed feature space: one weight
// vector per label, stored as a flat K x D row-major matrix.
struct Model {
  LabelSet labels;
  uint32_t dimension = 0;
  Direction direction = Direction::FORWARD;
  std::string pattern_fingerprint;
  std::vector<double> weights;  // labels.size() * dimension

  double weight(int label, uint32_t index) const {
    return weights[static_cast<size_t>(label) * dimension + index];
  }
};

struct TrainingConfig {
  double lambda = 1e-6;
  OptimizerConfig optimizer;       // tolerance 1e-6, max 300 iterations
  uint32_t dimension = 1u << 18;   // 262144
};

// P(y | x) = softmax over per-label scores, max-subtracted for stability.
// Sums to 1 within 1e-12. Feature indices must be < model.dimension.
std::vector<double> predict_distribution(const Model& model,
                                         const FeatureVector& features);
std::vector<double> predict_log_distribution(const Model& model,
                                             const FeatureVector& features);

struct LabeledExample {
  FeatureVector features;
  int label = 0;
};

// Regularized negative log-likelihood of a fixed example set:
//   f(theta) = -sum_i log P(y_i | x_i) + (lambda/2) ||theta||^2
class LogisticObjective : public ObjectiveFunction {
 public:
  LogisticObjective(std::vector<LabeledExample> examples, int num_labels,
                    uint32_t dimension, double lambda);

  int dimension() const override;
  double evaluate(const std::vector<double>& x,
                  std::vector<double>& grad) override;

 private:
  std::vector<LabeledExample> examples_;
  int num_labels_;
  uint32_t dim_;
  double lambda_;
};

// One training example per token position, conditioned on GOLD prior tags.
// BACKWARD reverses each sentence first; regexp types are (re)annotated
// with the given pattern set either way.
std::vector<LabeledExample> build_training_examples(
    const std::vector<Sentence>& corpus, const PatternSet& patterns,
    const LabelSet& labels, uint32_t dimension, Direction direction);

// Trains from the all-zeros weight vector; deterministic for a fixed corpus
// and config. Throws DataError on an empty corpus or an out-of-inventory
// gold tag, and propagates OptimizeError.
Model train(const std::vector<Sentence>& corpus, const PatternSet& patterns,
            const TrainingConfig& config, Direction direction,
            const IterationCallback& callback = {});

// Binary model format, little-endian throughout:
//   "VNER" | version u16 | direction u8 | D u32 | K u16 |
//   K x (len u16, UTF-8 tag) | (len u16, fingerprint) | K*D f64 weights.
void save_model(const Model& model, std::ostream& out);
Model load_model(std::istream& in);
void save_model_file(const Model& model, const std::string& path);
Model load_model_file(const std::string& path);

}  // namespace vner
