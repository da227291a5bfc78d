#include "vner/optimizer.hpp"

#include <cmath>
#include <cstddef>
#include <deque>

#include "vner/errors.hpp"

namespace vner {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr int kMaxHalvings = 50;
constexpr double kCurvatureFloor = 1e-10;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

// d = -H g estimated from the stored curvature pairs.
std::vector<double> search_direction(const std::deque<Pair>& pairs,
                                     const std::vector<double>& g) {
  std::vector<double> q = g;
  std::vector<double> alpha(pairs.size());
  for (size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * dot(pairs[i].s, q);
    for (size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * pairs[i].y[k];
  }
  if (!pairs.empty()) {
    const Pair& latest = pairs.back();
    double gamma = dot(latest.s, latest.y) / dot(latest.y, latest.y);
    for (double& x : q) x *= gamma;
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    double beta = pairs[i].rho * dot(pairs[i].y, q);
    for (size_t k = 0; k < q.size(); ++k) {
      q[k] += (alpha[i] - beta) * pairs[i].s[k];
    }
  }
  for (double& x : q) x = -x;
  return q;
}

}  // namespace

OptimizeResult minimize(ObjectiveFunction& f, std::vector<double> x0,
                        const OptimizerConfig& config,
                        const IterationCallback& callback) {
  if (config.memory < 1) throw DataError("optimizer memory must be >= 1");
  if (config.tolerance <= 0) throw DataError("tolerance must be positive");
  if (config.max_iterations < 1) {
    throw DataError("max_iterations must be >= 1");
  }
  if (static_cast<int>(x0.size()) != f.dimension()) {
    throw DataError("x0 size does not match objective dimension");
  }

  OptimizeResult result;
  result.x = std::move(x0);
  std::vector<double> g(result.x.size());
  double value = f.evaluate(result.x, g);
  if (!std::isfinite(value) || !all_finite(g)) {
    throw OptimizeError("objective not finite at the starting point",
                        result.x);
  }
  result.trace.push_back(value);

  std::deque<Pair> pairs;
  std::vector<double> x_new(result.x.size());
  std::vector<double> g_new(result.x.size());

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    std::vector<double> d = search_direction(pairs, g);
    double dg = dot(d, g);
    if (dg >= 0.0) {  // not a descent direction; fall back to steepest
      d = g;
      for (double& x : d) x = -x;
      dg = -dot(g, g);
    }

    // Unit steps are well-scaled once curvature is known; before that,
    // start at 1/|g| so the first probe is a modest move.
    double step = pairs.empty()
                      ? 1.0 / std::max(1e-12, std::sqrt(dot(g, g)))
                      : 1.0;
    double new_value = 0.0;
    bool accepted = false;
    for (int half = 0; half < kMaxHalvings; ++half, step *= 0.5) {
      for (size_t k = 0; k < result.x.size(); ++k) {
        x_new[k] = result.x[k] + step * d[k];
      }
      new_value = f.evaluate(x_new, g_new);
      if (!std::isfinite(new_value) || !all_finite(g_new)) {
        throw OptimizeError("objective not finite during line search",
                            result.x);
      }
      if (new_value <= value + kArmijoC1 * step * dg) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw OptimizeError("line search failed after " +
                              std::to_string(kMaxHalvings) + " halvings",
                          result.x);
    }

    Pair pair;
    pair.s.resize(result.x.size());
    pair.y.resize(result.x.size());
    for (size_t k = 0; k < result.x.size(); ++k) {
      pair.s[k] = step * d[k];
      pair.y[k] = g_new[k] - g[k];
    }
    double sy = dot(pair.s, pair.y);
    if (sy > kCurvatureFloor) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > config.memory) pairs.pop_front();
    }

    result.x.swap(x_new);
    g.swap(g_new);
    double previous = value;
    value = new_value;
    result.trace.push_back(value);
    result.iterations = iter;
    if (callback) callback(iter, value, max_norm(g));

    if (std::fabs(value - previous) / std::max(1.0, std::fabs(value)) <
        config.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace vner
