#pragma once

#include <stdexcept>
#include <string>

namespace interdag {

enum class Errc {
  CycleDetected,
  DuplicateNode,
  DanglingEdge,
  UnknownNode,
  OverlappingSets,
  InvalidPath,
  DotSyntax,
  InvalidSpec,
  InvalidSize,
  InvalidQuery,
  EnumerationBound,
  CandidateSetTooLarge,
  StateSpaceTooLarge,
  DomainViolation,
  OverlappingTargets,
  IncompleteSpec,
  PositivityViolation,
  IoError,
};

/// Domain error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace interdag
