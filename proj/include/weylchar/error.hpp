#pragma once

#include <stdexcept>
#include <string>

namespace weylchar {

/// Error categories. The CLI maps Config to exit 2, Capacity to exit 3 and
/// everything else to exit 4.
enum class ErrorKind {
  Config,      // malformed input or violated precondition on configuration
  Capacity,    // a size cap (Weyl group order, word count, oracle dim) exceeded
  Domain,      // mathematically invalid argument (non-dominant weight, ...)
  Structural,  // operation needs a simple root system
  Singular,    // regular-point formula called at a singular point
  Snap,        // floating point could not be snapped onto a singular stratum
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const { return kind_; }
  /// Name of the offending input field, empty when not attributable.
  const std::string& field() const { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::string field = {}) {
  throw Error(kind, message, std::move(field));
}

}  // namespace weylchar
