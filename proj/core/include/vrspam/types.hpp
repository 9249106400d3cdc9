#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vrspam {

using Vector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Dataset violates a precondition (empty, single-class, all-zero, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver, regularizer, or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reference solver did not reach the requested tolerance within the cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, Vector last_iterate, double residual)
      : Error(message), last_iterate(std::move(last_iterate)), residual(residual) {}

  Vector last_iterate;
  double residual = 0.0;
};

/// One sparse feature. Indices are 1-based in files and in memory.
struct Feature {
  std::int32_t index = 0;
  double value = 0.0;
};

struct Sample {
  std::vector<Feature> features;  // strictly increasing indices
  int label = 0;                  // +1 or -1

  double dot(const Vector& w) const {
    double s = 0.0;
    for (const Feature& f : features) s += w[f.index - 1] * f.value;
    return s;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const Feature& f : features) s += f.value * f.value;
    return s;
  }
};

struct Dataset {
  std::vector<Sample> samples;
  std::int32_t dimension = 0;  // >= every feature index

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

/// Sufficient statistics of a training set: class prior, class-conditional
/// feature means, and the largest sample norm (the scale constant in the
/// step-size bound).
struct DatasetStats {
  double positive_fraction = 0.0;  // n_pos / (n_pos + n_neg)
  Vector mean_pos;
  Vector mean_neg;
  double max_norm = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;

  Eigen::Index dimension() const { return mean_pos.size(); }
};

}  // namespace vrspam
