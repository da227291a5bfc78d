#pragma once

#include <functional>
#include <vector>

namespace vner {

// A smooth objective: evaluate() returns f(x) and writes the gradient into
// grad (resized by the caller to dimension()).
class ObjectiveFunction {
 public:
  virtual ~ObjectiveFunction() = default;
  virtual int dimension() const = 0;
  virtual double evaluate(const std::vector<double>& x,
                          std::vector<double>& grad) = 0;
};

struct OptimizerConfig {
  int memory = 10;
  double tolerance = 1e-6;      // relative function decrease
  int max_iterations = 300;
};

struct OptimizeResult {
  std::vector<double> x;
  std::vector<double> trace;  // f(x0), then f after each iteration
  bool converged = false;     // tolerance reached before the iteration cap
  int iterations = 0;
};

// Called after each accepted iteration with (iteration, f, max-norm of g).
using IterationCallback =
    std::function<void(int iteration, double value, double grad_norm)>;

// Limited-memory BFGS (two-loop recursion) with a backtracking Armijo line
// search. Stops when |f_k - f_{k-1}| / max(1, |f_k|) < tolerance or after
// max_iterations. Throws OptimizeError — carrying the last good iterate —
// if the objective turns non-finite or the line search fails to find an
// acceptable step within 50 halvings.
OptimizeResult minimize(ObjectiveFunction& f, std::vector<double> x0,
                        const OptimizerConfig& config,
                        const IterationCallback& callback = {});

}  // namespace vner
