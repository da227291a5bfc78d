#include "vner/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "vner/errors.hpp"

namespace vner {

namespace {

constexpr char kMagic[4] = {'V', 'N', 'E', 'R'};
constexpr uint16_t kFormatVersion = 1;

// Per-label raw scores for a feature vector; throws on an index outside the
// model's hashed space (a caller bug, not a data condition).
std::vector<double> label_scores(const Model& model,
                                 const FeatureVector& features) {
  const int K = model.labels.size();
  std::vector<double> scores(K, 0.0);
  for (uint32_t index : features.indices) {
    if (index >= model.dimension) {
      throw DataError("feature index " + std::to_string(index) +
                      " outside model dimension " +
                      std::to_string(model.dimension));
    }
    for (int k = 0; k < K; ++k) scores[k] += model.weight(k, index);
  }
  return scores;
}

void write_bytes(std::ostream& out, const void* data, size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void write_u16(std::ostream& out, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  write_bytes(out, b, 2);
}

void write_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  write_bytes(out, b, 4);
}

void write_f64(std::ostream& out, double v) {
  uint64_t bits = std::bit_cast<uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  write_bytes(out, b, 8);
}

void read_bytes(std::istream& in, void* data, size_t n) {
  if (!in.read(static_cast<char*>(data), static_cast<std::streamsize>(n))) {
    throw ModelIoError("truncated model file");
  }
}

uint16_t read_u16(std::istream& in) {
  unsigned char b[2];
  read_bytes(in, b, 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  read_bytes(in, b, 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& in) {
  unsigned char b[8];
  read_bytes(in, b, 8);
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_string(std::ostream& out, const std::string& s) {
  if (s.size() > 0xffff) throw ModelIoError("string too long for model file");
  write_u16(out, static_cast<uint16_t>(s.size()));
  write_bytes(out, s.data(), s.size());
}

std::string read_string(std::istream& in) {
  uint16_t len = read_u16(in);
  std::string s(len, '\0');
  if (len > 0) read_bytes(in, s.data(), len);
  return s;
}

}  // namespace

LabelSet LabelSet::conll_default() {
  return {{"O", "B-LOC", "I-LOC", "B-MISC", "I-MISC", "B-ORG", "I-ORG",
           "B-PER", "I-PER"}};
}

int LabelSet::index_of(std::string_view tag) const {
  for (size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == tag) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> predict_log_distribution(const Model& model,
                                             const FeatureVector& features) {
  std::vector<double> scores = label_scores(model, features);
  double max = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - max);
  double lse = max + std::log(sum);
  for (double& s : scores) s -= lse;
  return scores;
}

std::vector<double> predict_distribution(const Model& model,
                                         const FeatureVector& features) {
  std::vector<double> scores = label_scores(model, features);
  double max = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max);
    sum += s;
  }
  for (double& s : scores) s /= sum;
  return scores;
}

LogisticObjective::LogisticObjective(std::vector<LabeledExample> examples,
                                     int num_labels, uint32_t dimension,
                                     double lambda)
    : examples_(std::move(examples)),
      num_labels_(num_labels),
      dim_(dimension),
      lambda_(lambda) {
  if (num_labels_ < 1) throw DataError("objective needs at least one label");
  if (lambda_ < 0) throw DataError("lambda must be non-negative");
  for (const LabeledExample& ex : examples_) {
    if (ex.label < 0 || ex.label >= num_labels_) {
      throw DataError("gold label index out of range");
    }
    for (uint32_t i : ex.features.indices) {
      if (i >= dim_) throw DataError("feature index out of range");
    }
  }
}

int LogisticObjective::dimension() const {
  return num_labels_ * static_cast<int>(dim_);
}

double LogisticObjective::evaluate(const std::vector<double>& x,
                                   std::vector<double>& grad) {
  grad.assign(x.size(), 0.0);
  double value = 0.0;
  std::vector<double> scores(num_labels_);
  for (const LabeledExample& ex : examples_) {
    for (int k = 0; k < num_labels_; ++k) {
      double s = 0.0;
      const size_t row = static_cast<size_t>(k) * dim_;
      for (uint32_t i : ex.features.indices) s += x[row + i];
      scores[k] = s;
    }
    double max = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (double& s : scores) {
      s = std::exp(s - max);
      sum += s;
    }
    value += std::log(sum) + max;  // log-sum-exp
    const size_t gold_row = static_cast<size_t>(ex.label) * dim_;
    double gold_score = 0.0;
    for (uint32_t i : ex.features.indices) gold_score += x[gold_row + i];
    value -= gold_score;
    for (int k = 0; k < num_labels_; ++k) {
      double p = scores[k] / sum;
      double coeff = p - (k == ex.label ? 1.0 : 0.0);
      const size_t row = static_cast<size_t>(k) * dim_;
      for (uint32_t i : ex.features.indices) grad[row + i] += coeff;
    }
  }
  if (lambda_ > 0) {
    double norm2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      norm2 += x[i] * x[i];
      grad[i] += lambda_ * x[i];
    }
    value += 0.5 * lambda_ * norm2;
  }
  return value;
}

std::vector<LabeledExample> build_training_examples(
    const std::vector<Sentence>& corpus, const PatternSet& patterns,
    const LabelSet& labels, uint32_t dimension, Direction direction) {
  std::vector<LabeledExample> examples;
  for (const Sentence& original : corpus) {
    Sentence sentence = direction == Direction::BACKWARD
                            ? reverse_sentence(original)
                            : original;
    sentence = annotate(patterns, sentence);
    for (int j = 0; j < static_cast<int>(sentence.size()); ++j) {
      Context ctx;
      ctx.sentence = &sentence;
      ctx.position = j;
      ctx.t1 = j >= 1 ? sentence[j - 1].ne : "BOS";
      ctx.t2 = j >= 2 ? sentence[j - 2].ne : "BOS";
      int label = labels.index_of(sentence[j].ne);
      if (label < 0) {
        throw DataError("gold NE tag '" + sentence[j].ne +
                        "' is not in the label inventory");
      }
      examples.push_back({hash_features(extract(ctx), dimension), label});
    }
  }
  return examples;
}

Model train(const std::vector<Sentence>& corpus, const PatternSet& patterns,
            const TrainingConfig& config, Direction direction,
            const IterationCallback& callback) {
  if (corpus.empty()) throw DataError("training corpus is empty");
  LabelSet labels = LabelSet::conll_default();
  std::vector<LabeledExample> examples = build_training_examples(
      corpus, patterns, labels, config.dimension, direction);
  LogisticObjective objective(std::move(examples), labels.size(),
                              config.dimension, config.lambda);
  std::vector<double> x0(static_cast<size_t>(objective.dimension()), 0.0);
  OptimizeResult result =
      minimize(objective, std::move(x0), config.optimizer, callback);

  Model model;
  model.labels = std::move(labels);
  model.dimension = config.dimension;
  model.direction = direction;
  model.pattern_fingerprint = fingerprint(patterns);
  model.weights = std::move(result.x);
  return model;
}

void save_model(const Model& model, std::ostream& out) {
  const int K = model.labels.size();
  if (model.weights.size() != static_cast<size_t>(K) * model.dimension) {
    throw ModelIoError("weight matrix size does not match K x D");
  }
  write_bytes(out, kMagic, 4);
  write_u16(out, kFormatVersion);
  unsigned char dir = static_cast<unsigned char>(model.direction);
  write_bytes(out, &dir, 1);
  write_u32(out, model.dimension);
  write_u16(out, static_cast<uint16_t>(K));
  for (const std::string& tag : model.labels.tags) write_string(out, tag);
  write_string(out, model.pattern_fingerprint);
  for (double w : model.weights) write_f64(out, w);
  if (!out) throw ModelIoError("write failed");
}

Model load_model(std::istream& in) {
  char magic[4];
  read_bytes(in, magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw ModelIoError("not a model file (bad magic)");
  }
  uint16_t version = read_u16(in);
  if (version != kFormatVersion) {
    throw ModelIoError("unsupported model format version " +
                       std::to_string(version));
  }
  unsigned char dir;
  read_bytes(in, &dir, 1);
  if (dir > 1) throw ModelIoError("invalid direction byte");

  Model model;
  model.direction = static_cast<Direction>(dir);
  model.dimension = read_u32(in);
  if (model.dimension == 0 ||
      (model.dimension & (model.dimension - 1)) != 0) {
    throw ModelIoError("model dimension is not a power of two");
  }
  uint16_t K = read_u16(in);
  if (K == 0) throw ModelIoError("model has no labels");
  for (int k = 0; k < K; ++k) {
    model.labels.tags.push_back(read_string(in));
  }
  if (model.labels.index_of("O") < 0) {
    throw ModelIoError("label set lacks the O tag");
  }
  model.pattern_fingerprint = read_string(in);
  model.weights.resize(static_cast<size_t>(K) * model.dimension);
  for (double& w : model.weights) {
    w = read_f64(in);
    if (!std::isfinite(w)) throw ModelIoError("non-finite weight");
  }
  return model;
}

void save_model_file(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelIoError("cannot open for writing: " + path);
  save_model(model, out);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelIoError("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace vner
