#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfts {

// Base for all domain errors. `kind()` is stable and machine-parsable; the
// CLI prints "error: <kind>: <message>" on failure.
class TftsError : public std::runtime_error {
public:
  TftsError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct InvalidSpecError : TftsError {
  explicit InvalidSpecError(const std::string& m) : TftsError("InvalidSpec", m) {}
};

struct CohortParseError : TftsError {
  CohortParseError(std::int64_t line, const std::string& m)
      : TftsError("ParseFailure", "line " + std::to_string(line) + ": " + m), line(line) {}
  std::int64_t line;
};

struct InvariantViolationError : TftsError {
  InvariantViolationError(std::int64_t line, const std::string& field, const std::string& m)
      : TftsError("InvariantViolation",
                  "line " + std::to_string(line) + ", field " + field + ": " + m),
        line(line),
        field(field) {}
  std::int64_t line;
  std::string field;
};

struct MissingComparisonError : TftsError {
  explicit MissingComparisonError(const std::string& m) : TftsError("MissingComparison", m) {}
};

struct InconsistentNightError : TftsError {
  explicit InconsistentNightError(const std::string& m) : TftsError("InconsistentNight", m) {}
};

struct IncompleteBankError : TftsError {
  explicit IncompleteBankError(const std::string& m) : TftsError("IncompleteBank", m) {}
};

struct UnknownModelError : TftsError {
  explicit UnknownModelError(const std::string& m) : TftsError("UnknownModel", m) {}
};

struct EmptyInputError : TftsError {
  explicit EmptyInputError(const std::string& m) : TftsError("EmptyInput", m) {}
};

struct BackendUnavailableError : TftsError {
  explicit BackendUnavailableError(const std::string& m) : TftsError("BackendUnavailable", m) {}
};

struct IoError : TftsError {
  explicit IoError(const std::string& m) : TftsError("IoFailure", m) {}
};

struct ConfigError : TftsError {
  explicit ConfigError(const std::string& m) : TftsError("ConfigError", m) {}
};

}  // namespace tfts
