#pragma once

/// @file textio.hpp
/// The `.sbc` model language (parse and render) and CSV/JSON interchange
/// for transition relations and projected views.
///
/// Grammar:
///
///     model      := "system" IDENT "{" itg+ "}"
///     itg        := "itg" IDENT "{" "init" IDENT ";" transition* "}"
///     transition := IDENT "->" IDENT ":" ("CAL"|"RET") agent "->" agent
///                   "." IDENT "(" [param (";" param)*] ")" ";"
///     agent      := ":" IDENT | IDENT
///     param      := ("in"|"out"|"inout") IDENT [":" IDENT]
///
/// `//` starts a comment running to end of line. Keywords are contextual, so
/// any identifier may name a state, agent or operation.

#include "sbc/core.hpp"
#include "sbc/project.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sbc
{

struct SourceSpan
{
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::size_t length = 0;

  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

struct ParseDiagnostic
{
  Severity severity;
  std::string message;
  SourceSpan span;
};

/// `file:line:col: error: message`.
[[nodiscard]] std::string format_diagnostic(const ParseDiagnostic & d, std::string_view file = {});

struct ParseResult
{
  std::optional<SystemItg> system;  // present iff no Error diagnostic
  std::vector<ParseDiagnostic> diagnostics;
  /// Span of each transition, indexed [region][transition]. Empty on failure.
  std::vector<std::vector<SourceSpan>> transition_spans;

  [[nodiscard]] bool ok() const noexcept { return system.has_value(); }
};

[[nodiscard]] ParseResult parse_model(std::string_view text);

/// Canonical text for a system; re-parses to an equal value.
[[nodiscard]] std::string render_model(const SystemItg & system);

struct ParamCellError
{
  bool bad_direction = false;
  std::string message;
};

/// Parses a `;`-separated parameter cell such as `in x; out y : T`.
[[nodiscard]] std::variant<ParamList, ParamCellError> parse_param_cell(std::string_view text);

// --- relations ---------------------------------------------------------------

struct ItgrRow
{
  Identifier region;
  Transition transition;

  friend bool operator==(const ItgrRow &, const ItgrRow &) = default;
};

/// The flat transition relation of a system, each row tagged with its region.
struct ItgrRelation
{
  std::vector<ItgrRow> rows;

  friend bool operator==(const ItgrRelation &, const ItgrRelation &) = default;
};

[[nodiscard]] ItgrRelation itgr_relation(const SystemItg & system);

/// Regroups rows into regions (first-appearance order). Each region's initial
/// state is the source of its first row. Duplicate rows and actor callees are
/// kept so that `validate` can report them.
[[nodiscard]] SystemItg to_system(const ItgrRelation & relation, Identifier name);

enum class RelationKind
{
  Itgr,
  Class,
  State,
  Sequence,
};

[[nodiscard]] std::optional<RelationKind> parse_relation_kind(std::string_view text) noexcept;

using AnyRelation =
  std::variant<ItgrRelation, ClassRelation, StateRelationComposite, SequenceRelationComposite>;

enum class ImportErrorCode
{
  HeaderMismatch,
  BadCell,
  BadDirection,
};

[[nodiscard]] std::string_view to_string(ImportErrorCode code) noexcept;

class ImportError : public std::runtime_error
{
public:
  /// `row` counts data rows from 1 (0 is the header); `column` is 1-based.
  ImportError(ImportErrorCode code, std::size_t row, std::size_t column, const std::string & message);

  [[nodiscard]] ImportErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
  ImportErrorCode code_;
  std::size_t row_;
  std::size_t column_;
};

/// Column headers, as written on the first CSV line.
[[nodiscard]] std::vector<std::string> relation_columns(RelationKind kind);

/// Cells of one row, in `relation_columns` order.
[[nodiscard]] std::vector<std::string> row_cells(const ItgrRow & row);
[[nodiscard]] std::vector<std::string> row_cells(const ClassRow & row);
[[nodiscard]] std::vector<std::string> row_cells(const Identifier & region, const StateRow & row);
[[nodiscard]] std::vector<std::string> row_cells(const Identifier & region, const SequenceRow & row);

[[nodiscard]] std::string export_relation_csv(const ItgrRelation & relation);
[[nodiscard]] std::string export_relation_csv(const SystemItg & system);
[[nodiscard]] std::string export_relation_csv(const ClassRelation & relation);
[[nodiscard]] std::string export_relation_csv(const StateRelationComposite & relation);
[[nodiscard]] std::string export_relation_csv(const SequenceRelationComposite & relation);
[[nodiscard]] std::string export_relation_csv(const AnyRelation & relation);

/// Throws ImportError. Class relations are returned in canonical order.
[[nodiscard]] AnyRelation import_relation_csv(std::string_view text, RelationKind kind);

[[nodiscard]] std::string export_relation_json(const ItgrRelation & relation);
[[nodiscard]] std::string export_relation_json(const SystemItg & system);
[[nodiscard]] std::string export_relation_json(const ClassRelation & relation);
[[nodiscard]] std::string export_relation_json(const StateRelationComposite & relation);
[[nodiscard]] std::string export_relation_json(const SequenceRelationComposite & relation);
[[nodiscard]] std::string export_relation_json(const AnyRelation & relation);

/// Array of objects keyed by the CSV column names. Throws ImportError.
[[nodiscard]] AnyRelation import_relation_json(std::string_view text, RelationKind kind);

}  // namespace sbc
