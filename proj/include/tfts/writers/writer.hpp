#pragma once
// The bounded writer interface. Backends receive one request and return one
// response; they never mutate the request. Offline backends (template, fault
// injection) act on the request's structured context; the remote backend
// sends prompt_text over the wire and ignores it.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "tfts/core/types.hpp"

namespace tfts::writers {

struct WriterRequest {
  std::string prompt_text;
  std::string schema_id;
  int max_output_tokens = 512;
  bool deterministic = true;  // temperature-0 equivalent
  // Canonical JSON side-channel for offline backends; not sent over the wire.
  // {"kind":"writer","night":{...},"packet":{...}} or
  // {"kind":"artifact","layer":"...","night":{...},"reference_artifact":{...}}
  std::string context_json;
};

struct WriterResponse {
  std::string raw_text;
  CallUsage usage;
  std::int64_t latency_ms = 0;
};

enum class BackendErrorKind : std::uint8_t { Timeout, Transport, Auth, Provider, Refusal };
std::string backend_error_kind_name(BackendErrorKind kind);

struct BackendFailure {
  BackendErrorKind kind = BackendErrorKind::Transport;
  std::string detail;
  int status = 0;  // HTTP status for Provider errors
  std::int64_t latency_ms = 0;

  std::string to_string() const;
};

using WriterResult = std::variant<WriterResponse, BackendFailure>;

class Writer {
public:
  virtual ~Writer() = default;
  virtual WriterResult write(const WriterRequest& request) = 0;
  virtual std::string name() const = 0;
};

// Documented token approximation for offline backends: the number of
// whitespace-separated chunks. Remote backends use provider-reported usage.
std::int64_t whitespace_token_count(const std::string& text);

}  // namespace tfts::writers
