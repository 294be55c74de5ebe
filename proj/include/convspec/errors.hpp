#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace convspec {

/// Base of every error thrown by the library. `stage()` names the pipeline
/// step that failed ("grid", "main_equation", "oracle", ...).
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Two grid functions on different grids were combined.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Bad argument or malformed input data (exit code 3 in the CLI).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File could not be read, written or parsed (exit code 1 in the CLI).
class IoError : public Error {
public:
    using Error::Error;
};

/// Numerical failure of an iterative solver (exit code 2 in the CLI).
/// Carries the per-iteration history of the monitored quantity.
class SolverError : public Error {
public:
    SolverError(std::string stage, const std::string& what, std::vector<double> history = {})
        : Error(std::move(stage), what), history_(std::move(history)) {}

    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace convspec
