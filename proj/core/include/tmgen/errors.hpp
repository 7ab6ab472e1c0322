#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmgen {

// Base class for all recoverable tmgen failures. The CLI maps these to
// exit codes: ConfigError -> 2, everything else -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or invalid distribution/topology parameters.
// Carries the offending field name when known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message, std::string field = "")
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Argument outside its documented domain (bad node index, non-normalized
// probability vector, non-positive duration, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested node-distribution split cannot be realized on the given
// topology (e.g. intra-rack mass but no intra-rack pairs).
class InfeasibilityError : public Error {
 public:
  using Error::Error;
};

// Shaping could not meet the JSD threshold within max_attempts.
class ShapingError : public Error {
 public:
  ShapingError(const std::string& message, double best_jsd, int attempts)
      : Error(message), best_jsd_(best_jsd), attempts_(attempts) {}
  double best_jsd() const noexcept { return best_jsd_; }
  int attempts() const noexcept { return attempts_; }

 private:
  double best_jsd_;
  int attempts_;
};

// A flow could not be assigned to any pair without violating capacity.
class PackingError : public Error {
 public:
  PackingError(const std::string& message, std::size_t flow_index,
               std::int64_t flow_size)
      : Error(message), flow_index_(flow_index), flow_size_(flow_size) {}
  std::size_t flow_index() const noexcept { return flow_index_; }
  std::int64_t flow_size() const noexcept { return flow_size_; }

 private:
  std::size_t flow_index_;
  std::int64_t flow_size_;
};

// Malformed input file. line() is 1-based and counts every line,
// comments included.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string path, std::size_t line)
      : Error(message), path_(std::move(path)), line_(line) {}
  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmgen
