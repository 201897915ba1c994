#pragma once

#include <stdexcept>
#include <string>

namespace proph {

/// Coarse buckets the CLI maps to exit statuses: config errors are bad
/// or unresolvable inputs, capability errors are requests that exceed
/// what exact computation supports.
enum class ErrorKind {
  config,
  capability,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct NotDiscreteError : Error {
  explicit NotDiscreteError(const std::string& msg)
      : Error(ErrorKind::capability, msg) {}
};

struct ExplosionCapError : Error {
  explicit ExplosionCapError(const std::string& msg)
      : Error(ErrorKind::capability, msg) {}
};

struct EllOutOfRangeError : ConfigError {
  explicit EllOutOfRangeError(const std::string& msg) : ConfigError(msg) {}
};

struct IndexOutOfRangeError : ConfigError {
  explicit IndexOutOfRangeError(const std::string& msg) : ConfigError(msg) {}
};

struct RankOutOfRangeError : ConfigError {
  explicit RankOutOfRangeError(const std::string& msg) : ConfigError(msg) {}
};

struct RuleMismatchError : ConfigError {
  explicit RuleMismatchError(const std::string& msg) : ConfigError(msg) {}
};

struct TooManyAgentsError : ConfigError {
  explicit TooManyAgentsError(const std::string& msg) : ConfigError(msg) {}
};

}  // namespace proph
