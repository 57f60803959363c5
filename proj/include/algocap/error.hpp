#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace algocap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalueError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed density / semi-density validation.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class UndefinedWeightError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// Kraus completeness or Choi positivity / trace-preservation failure.
class ChannelError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

class RouteMismatchError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  BudgetError(std::size_t required, std::size_t allowed)
      : Error("dimension budget exceeded: required " + std::to_string(required) +
              ", allowed " + std::to_string(allowed)),
        required_(required),
        allowed_(allowed) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t allowed() const noexcept { return allowed_; }

 private:
  std::size_t required_;
  std::size_t allowed_;
};

/// Malformed input configuration. `field()` is a JSON-style path such as
/// `channel.kraus[1]`.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)), message_(message) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

}  // namespace algocap
