#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sbc
{

enum class Severity
{
  Error,
  Warning,
};

/// Closed set of model lint codes. The string forms are stable.
enum class DiagnosticCode
{
  UnmatchedRet,
  UnmatchedCal,
  BranchingRegion,
  UnreachableState,
  DuplicateRow,
  BadAgentKind,
};

[[nodiscard]] std::string_view to_string(Severity severity) noexcept;
[[nodiscard]] std::string_view to_string(DiagnosticCode code) noexcept;

struct Diagnostic
{
  Severity severity;
  DiagnosticCode code;
  std::string message;
  std::string region;
  std::optional<std::size_t> transition_index;  // 0-based, within the region

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

}  // namespace sbc
