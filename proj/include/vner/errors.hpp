#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vner {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Anything wrong with input data: malformed files, structural mismatches,
// invalid tag strings, broken model files.
struct DataError : Error {
  using Error::Error;
};

// Malformed line in a line-oriented file. line is 1-based.
struct ParseError : DataError {
  ParseError(const std::string& msg, int line_number)
      : DataError(msg + " (line " + std::to_string(line_number) + ")"),
        line(line_number) {}
  int line;
};

// A token is missing an annotation the feature extractor needs.
struct FeatureError : DataError {
  explicit FeatureError(const std::string& key)
      : DataError("missing required annotation: " + key), annotation_key(key) {}
  std::string annotation_key;
};

struct ModelIoError : DataError {
  using DataError::DataError;
};

// Optimization failed; carries the last iterate that still evaluated cleanly.
struct OptimizeError : Error {
  OptimizeError(const std::string& msg, std::vector<double> iterate)
      : Error(msg), last_iterate(std::move(iterate)) {}
  std::vector<double> last_iterate;
};

}  // namespace vner
