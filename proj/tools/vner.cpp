// Command-line front end: train, tag, annotate, eval, report.
// Exit codes: 0 success, 1 usage, 2 data error, 3 training failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vner/combiner.hpp"
#include "vner/corpus.hpp"
#include "vner/decoder.hpp"
#include "vner/errors.hpp"
#include "vner/evaluator.hpp"
#include "vner/model.hpp"
#include "vner/tokregex.hpp"

namespace {

using namespace vner;

std::vector<Sentence> read_conll_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  return read_conll(in);
}

std::vector<Sentence> read_conll_file(const std::string& path,
                                      const ColumnSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  return read_conll(in, spec);
}

// Column layout of an annotate input: 2-4 columns nest as
// word[POS[CHUNK[NE]]], except that a fourth column that does not parse as
// an NE tag is a REGEXP column (pattern names never collide with tag
// syntax); five columns are word POS CHUNK REGEXP NE.
ColumnSpec sniff_columns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> f;
    std::string word;
    while (fields >> word) f.push_back(word);
    if (f.empty()) continue;
    switch (f.size()) {
      case 1: throw ParseError("expected 2-5 columns, got 1", line_no);
      case 2: return {{Column::POS}};
      case 3: return {{Column::POS, Column::CHUNK}};
      case 4:
        if (is_valid_ne_tag(f[3])) return ColumnSpec::standard();
        return {{Column::POS, Column::CHUNK, Column::REGEXP}};
      case 5: return ColumnSpec::annotated();
      default:
        throw ParseError("expected 2-5 columns, got " +
                             std::to_string(f.size()),
                         line_no);
    }
  }
  return ColumnSpec::standard();  // empty file; layout is moot
}

void write_output(const std::vector<Sentence>& sentences,
                  const ColumnSpec& spec, const std::string& path) {
  if (path.empty() || path == "-") {
    write_conll(std::cout, sentences, spec);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path);
  write_conll(out, sentences, spec);
}

void check_fingerprint(const Model& model, const PatternSet& patterns,
                       const std::string& which) {
  if (model.pattern_fingerprint != fingerprint(patterns)) {
    std::cerr << "warning: " << which
              << " model was trained with a different pattern set "
                 "(fingerprint mismatch)\n";
  }
}

void check_direction(const Model& model, Direction expected,
                     const std::string& flag) {
  if (model.direction != expected) {
    std::cerr << "warning: model given to " << flag << " is a "
              << (model.direction == Direction::FORWARD ? "forward"
                                                        : "backward")
              << " model\n";
  }
}

IterationCallback trace_logger(const std::string& name) {
  return [name](int iteration, double value, double grad_norm) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%s] iter %3d  f %.6f  |g| %.3e\n",
                  name.c_str(), iteration, value, grad_norm);
    std::cerr << buf;
  };
}

struct TrainArgs {
  std::string input, patterns, out_forward, out_backward;
  double lambda = 1e-6;
  double tol = 1e-6;
  int max_iter = 300;
  uint32_t dim = 1u << 18;
};

int cmd_train(const TrainArgs& args) {
  if (args.out_forward.empty() && args.out_backward.empty()) {
    std::cerr << "error: need --out-forward and/or --out-backward\n";
    return 1;
  }
  PatternSet patterns = load_patterns_file(args.patterns);
  std::vector<Sentence> corpus = read_conll_file(args.input);
  TrainingConfig config;
  config.lambda = args.lambda;
  config.optimizer.tolerance = args.tol;
  config.optimizer.max_iterations = args.max_iter;
  config.dimension = args.dim;
  if (!args.out_forward.empty()) {
    Model model = train(corpus, patterns, config, Direction::FORWARD,
                        trace_logger("forward"));
    save_model_file(model, args.out_forward);
    std::cerr << "wrote " << args.out_forward << "\n";
  }
  if (!args.out_backward.empty()) {
    Model model = train(corpus, patterns, config, Direction::BACKWARD,
                        trace_logger("backward"));
    save_model_file(model, args.out_backward);
    std::cerr << "wrote " << args.out_backward << "\n";
  }
  return 0;
}

struct TagArgs {
  std::string input, patterns, forward, backward, policy, output;
  std::string mode = "greedy";
  int beam = 0;
};

DecodeConfig decode_config(const std::string& mode, int beam) {
  DecodeConfig config;
  if (mode == "greedy") {
    config.mode = DecodeMode::GREEDY;
  } else if (mode == "viterbi") {
    config.mode = DecodeMode::VITERBI;
  } else {
    throw DataError("unknown decode mode '" + mode + "'");
  }
  config.beam = beam;
  return config;
}

int cmd_tag(const TagArgs& args) {
  if (args.forward.empty() && args.backward.empty()) {
    std::cerr << "error: need --forward and/or --backward\n";
    return 1;
  }
  PatternSet patterns = load_patterns_file(args.patterns);
  DecodeConfig config = decode_config(args.mode, args.beam);
  std::vector<Sentence> sentences = read_conll_file(args.input);

  std::optional<Model> forward, backward;
  if (!args.forward.empty()) {
    forward = load_model_file(args.forward);
    check_direction(*forward, Direction::FORWARD, "--forward");
    check_fingerprint(*forward, patterns, "forward");
  }
  if (!args.backward.empty()) {
    backward = load_model_file(args.backward);
    check_direction(*backward, Direction::BACKWARD, "--backward");
    check_fingerprint(*backward, patterns, "backward");
  }

  if (forward && backward) {
    CombinePolicy policy = args.policy.empty()
                               ? CombinePolicy::shipped_default()
                               : load_policy_file(args.policy);
    for (Sentence& sentence : sentences) {
      auto [f, b] = decode_both(*forward, *backward, patterns, sentence,
                                config);
      sentence = combine(f, b, policy);
    }
  } else {
    const Model& model = forward ? *forward : *backward;
    for (Sentence& sentence : sentences) {
      sentence = decode(model, patterns, sentence, config).sentence;
    }
  }
  write_output(sentences, ColumnSpec::standard(), args.output);
  return 0;
}

struct AnnotateArgs {
  std::string input, patterns, output;
};

int cmd_annotate(const AnnotateArgs& args) {
  PatternSet patterns = load_patterns_file(args.patterns);
  ColumnSpec layout = sniff_columns(args.input);
  std::vector<Sentence> sentences = read_conll_file(args.input, layout);
  for (Sentence& sentence : sentences) {
    sentence = annotate(patterns, sentence);
  }
  // Emit the input layout with REGEXP inserted after CHUNK (before NE).
  ColumnSpec out_spec{{Column::POS, Column::CHUNK, Column::REGEXP}};
  bool had_ne = false;
  for (Column c : layout.columns) had_ne |= c == Column::NE;
  if (had_ne) out_spec.columns.push_back(Column::NE);
  write_output(sentences, out_spec, args.output);
  return 0;
}

struct EvalArgs {
  std::string gold, pred;
  bool machine = false;
};

int cmd_eval(const EvalArgs& args) {
  std::vector<Sentence> gold = read_conll_file(args.gold);
  std::vector<Sentence> pred = read_conll_file(args.pred);
  EvalReport report = evaluate(gold, pred);
  if (args.machine) {
    print_report_machine(std::cout, report);
  } else {
    print_report(std::cout, report);
  }
  return 0;
}

struct ReportArgs {
  std::string gold, patterns, forward, backward, policy;
  std::string mode = "greedy";
  int beam = 0;
};

int cmd_report(const ReportArgs& args) {
  PatternSet patterns = load_patterns_file(args.patterns);
  DecodeConfig config = decode_config(args.mode, args.beam);
  std::vector<Sentence> gold = read_conll_file(args.gold);
  Model forward = load_model_file(args.forward);
  Model backward = load_model_file(args.backward);
  check_direction(forward, Direction::FORWARD, "--forward");
  check_direction(backward, Direction::BACKWARD, "--backward");
  check_fingerprint(forward, patterns, "forward");
  check_fingerprint(backward, patterns, "backward");
  if (forward.direction == backward.direction ||
      forward.weights == backward.weights) {
    std::cerr << "warning: the two models are not a forward/backward pair; "
                 "the comparison below is degenerate\n";
  }
  CombinePolicy policy = args.policy.empty()
                             ? CombinePolicy::shipped_default()
                             : load_policy_file(args.policy);

  std::vector<Sentence> fwd_out, bwd_out, both_out;
  for (const Sentence& sentence : gold) {
    auto [f, b] = decode_both(forward, backward, patterns, sentence, config);
    both_out.push_back(combine(f, b, policy));
    fwd_out.push_back(std::move(f.sentence));
    bwd_out.push_back(std::move(b.sentence));
  }
  std::cout << "== Forward model ==\n";
  print_report(std::cout, evaluate(gold, fwd_out));
  std::cout << "\n== Backward model ==\n";
  print_report(std::cout, evaluate(gold, bwd_out));
  std::cout << "\n== Combined ==\n";
  print_report(std::cout, evaluate(gold, both_out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vietnamese named-entity tagger"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train forward/backward models");
  train_cmd->add_option("--input", train_args.input, "Training CoNLL file")
      ->required();
  train_cmd->add_option("--patterns", train_args.patterns, "Pattern file")
      ->required();
  train_cmd->add_option("--out-forward", train_args.out_forward,
                        "Where to write the forward model");
  train_cmd->add_option("--out-backward", train_args.out_backward,
                        "Where to write the backward model");
  train_cmd->add_option("--lambda", train_args.lambda, "L2 strength");
  train_cmd->add_option("--tol", train_args.tol, "Convergence tolerance");
  train_cmd->add_option("--max-iter", train_args.max_iter, "Iteration cap");
  train_cmd->add_option("--dim", train_args.dim,
                        "Hashed feature dimension (power of two)");

  TagArgs tag_args;
  CLI::App* tag_cmd = app.add_subcommand("tag", "Tag named entities");
  tag_cmd->add_option("--input", tag_args.input, "CoNLL input")->required();
  tag_cmd->add_option("--patterns", tag_args.patterns, "Pattern file")
      ->required();
  tag_cmd->add_option("--forward", tag_args.forward, "Forward model file");
  tag_cmd->add_option("--backward", tag_args.backward, "Backward model file");
  tag_cmd->add_option("--policy", tag_args.policy,
                      "Combine policy file (with two models)");
  tag_cmd->add_option("--mode", tag_args.mode, "greedy or viterbi");
  tag_cmd->add_option("--beam", tag_args.beam, "Viterbi beam width (0 = all)");
  tag_cmd->add_option("--output", tag_args.output, "Output file (- = stdout)");

  AnnotateArgs annotate_args;
  CLI::App* annotate_cmd =
      app.add_subcommand("annotate", "Add regexp-type annotations");
  annotate_cmd->add_option("--input", annotate_args.input, "CoNLL input")
      ->required();
  annotate_cmd->add_option("--patterns", annotate_args.patterns,
                           "Pattern file")
      ->required();
  annotate_cmd->add_option("--output", annotate_args.output,
                           "Output file (- = stdout)");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions");
  eval_cmd->add_option("--gold", eval_args.gold, "Gold CoNLL file")
      ->required();
  eval_cmd->add_option("--pred", eval_args.pred, "Predicted CoNLL file")
      ->required();
  eval_cmd->add_flag("--machine", eval_args.machine, "key=value output");

  ReportArgs report_args;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "Per-direction and combined scores on a dev set");
  report_cmd->add_option("--gold", report_args.gold, "Gold CoNLL file")
      ->required();
  report_cmd->add_option("--patterns", report_args.patterns, "Pattern file")
      ->required();
  report_cmd->add_option("--forward", report_args.forward, "Forward model")
      ->required();
  report_cmd->add_option("--backward", report_args.backward, "Backward model")
      ->required();
  report_cmd->add_option("--policy", report_args.policy, "Combine policy");
  report_cmd->add_option("--mode", report_args.mode, "greedy or viterbi");
  report_cmd->add_option("--beam", report_args.beam, "Viterbi beam width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(train_args);
    if (tag_cmd->parsed()) return cmd_tag(tag_args);
    if (annotate_cmd->parsed()) return cmd_annotate(annotate_args);
    if (eval_cmd->parsed()) return cmd_eval(eval_args);
    if (report_cmd->parsed()) return cmd_report(report_args);
  } catch (const vner::OptimizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const vner::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
