#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Series summation exceeded the allowed number of terms without meeting tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or iterative scheme could not reach the requested tolerance.
class ToleranceError : public std::runtime_error {
  public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

/// A user-supplied evaluator produced a non-finite value.
class EvaluationError : public std::runtime_error {
  public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// An explicit time-stepping scheme was configured outside its stability bound.
class StabilityError : public std::runtime_error {
  public:
    explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file failed schema validation; carries the offending field path.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path.empty() ? what : field_path + ": " + what),
          field_(std::move(field_path)) {}

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

}  // namespace fracwave
