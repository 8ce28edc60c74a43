#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gamlssboost {

/// Root of the library's exception hierarchy. The CLI maps each subclass
/// onto a process exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Vector/matrix shapes disagree.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Bad arguments or inconsistent configuration.
class UsageError : public Error {
public:
  using Error::Error;
};

/// Input data that cannot be fitted (non-finite entries, zero variance, ...).
class DataError : public Error {
public:
  using Error::Error;
};

/// A floating-point evaluation produced a non-finite value.
class NumericError : public Error {
public:
  NumericError(const std::string& what, std::size_t index)
      : Error(what + " (index " + std::to_string(index) + ")"), index_(index) {}
  explicit NumericError(const std::string& what) : Error(what), index_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// A base-learner fit is identically zero, so no step along it exists.
class DegenerateLearnerError : public Error {
public:
  using Error::Error;
};

}  // namespace gamlssboost
