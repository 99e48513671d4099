#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sbc::cli
{

enum class Command
{
  Validate,
  Project,
  Check,
  Emit,
  Simulate,
};

enum class View
{
  Class,
  State,
  Sequence,
};

enum class Format
{
  Table,
  Csv,
  Json,
  Plantuml,
  Dot,
  Trace,
};

enum ExitCode : int
{
  kSuccess = 0,
  kFailure = 1,  // validation errors (or warnings under --strict), nonconformance
  kParseError = 2,
  kUsageError = 3,
};

struct CliConfig
{
  Command command = Command::Validate;
  std::optional<View> view;
  Format format = Format::Table;
  std::string input;
  std::optional<std::string> against;  // check only
  std::optional<std::uint64_t> steps;  // simulate only
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool json_diagnostics = false;
  bool strict = false;
};

struct UsageError
{
  std::string message;
};

struct HelpText
{
  std::string text;
};

/// Parses arguments (without the program name) and checks that the options
/// fit the command: project/check/emit need a view (emit with dot excepted),
/// check needs --against, simulate needs --steps.
[[nodiscard]] std::variant<CliConfig, UsageError, HelpText> parse_args(const std::vector<std::string> & args);

/// Runs one command. Results go to `out` (or the `--out` file), diagnostics
/// to `err`.
[[nodiscard]] int run(const CliConfig & config, std::ostream & out, std::ostream & err);

/// parse_args + run.
[[nodiscard]] int main(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace sbc::cli
