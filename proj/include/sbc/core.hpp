#pragma once

/// @file core.hpp
/// Relational domain model of interaction transition graphs: agents,
/// operation signatures, interactions, transitions, regions and composed
/// systems, plus the composition and signature-merge operators.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbc
{

enum class ErrorCode
{
  InvalidIdentifier,
  DuplicateParameter,
  EmptyRegionList,
  DuplicateRegionName,
  NameMismatch,
  DuplicateParamConflict,
  AmbiguousReturn,
  MissingInitial,
  InvalidState,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Raised by every operation that rejects a model value.
class ModelError : public std::runtime_error
{
public:
  ModelError(ErrorCode code, const std::string & message)
      : std::runtime_error(message), code_(code)
  {
  }

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// A name matching `[A-Za-z_][A-Za-z0-9_]*`. Construction validates.
class Identifier
{
public:
  explicit Identifier(std::string value);

  [[nodiscard]] static bool is_valid(std::string_view text) noexcept;

  [[nodiscard]] const std::string & str() const noexcept { return value_; }

  friend bool operator==(const Identifier &, const Identifier &) = default;
  friend std::strong_ordering operator<=>(const Identifier & a, const Identifier & b)
  {
    return a.value_.compare(b.value_) <=> 0;
  }

private:
  std::string value_;
};

enum class AgentKind
{
  Actor,
  Object,
};

/// An actor of the environment or an object. Objects are written `:Name`.
struct Agent
{
  AgentKind kind;
  Identifier name;

  [[nodiscard]] static Agent actor(std::string name);
  [[nodiscard]] static Agent object(std::string name);

  [[nodiscard]] bool is_object() const noexcept { return kind == AgentKind::Object; }

  /// `:Name` for objects, `Name` for actors.
  [[nodiscard]] std::string notation() const;

  friend bool operator==(const Agent &, const Agent &) = default;
  friend auto operator<=>(const Agent &, const Agent &) = default;
};

enum class Direction
{
  In,
  Out,
  InOut,
};

[[nodiscard]] std::string_view to_string(Direction direction) noexcept;
[[nodiscard]] std::optional<Direction> parse_direction(std::string_view text) noexcept;

struct Parameter
{
  Direction direction;
  Identifier name;
  std::optional<Identifier> type;

  [[nodiscard]] static Parameter in(std::string name);
  [[nodiscard]] static Parameter out(std::string name);
  [[nodiscard]] static Parameter inout(std::string name);
  [[nodiscard]] Parameter typed(std::string type_name) const;

  friend bool operator==(const Parameter &, const Parameter &) = default;
  friend auto operator<=>(const Parameter &, const Parameter &) = default;
};

/// `in x`, `out y : T`.
[[nodiscard]] std::string format_parameter(const Parameter & param);

/// Ordered parameters with unique names.
class ParamList
{
public:
  ParamList() = default;
  explicit ParamList(std::vector<Parameter> params);
  ParamList(std::initializer_list<Parameter> params)
      : ParamList(std::vector<Parameter>(params))
  {
  }

  [[nodiscard]] std::span<const Parameter> params() const noexcept { return params_; }
  [[nodiscard]] std::size_t size() const noexcept { return params_.size(); }
  [[nodiscard]] bool empty() const noexcept { return params_.empty(); }
  [[nodiscard]] auto begin() const noexcept { return params_.begin(); }
  [[nodiscard]] auto end() const noexcept { return params_.end(); }

  friend bool operator==(const ParamList &, const ParamList &) = default;
  friend auto operator<=>(const ParamList &, const ParamList &) = default;

private:
  std::vector<Parameter> params_;
};

/// Parameters joined by `; `, as the relation tables print them.
[[nodiscard]] std::string format_params(const ParamList & params);

struct OpSignature
{
  Identifier op_name;
  ParamList params;

  friend bool operator==(const OpSignature &, const OpSignature &) = default;
  friend auto operator<=>(const OpSignature &, const OpSignature &) = default;
};

/// `op(in x; out y)`.
[[nodiscard]] std::string format_signature(const OpSignature & sig);

enum class Tag
{
  Cal,
  Ret,
};

[[nodiscard]] std::string_view to_string(Tag tag) noexcept;
[[nodiscard]] std::optional<Tag> parse_tag(std::string_view text) noexcept;

/// One value-passing handshake between a caller and a callee object.
struct Interaction
{
  Tag tag;
  Agent caller;
  Identifier op_name;
  ParamList params;
  Agent callee;

  [[nodiscard]] OpSignature signature() const { return {op_name, params}; }

  friend bool operator==(const Interaction &, const Interaction &) = default;
  friend auto operator<=>(const Interaction &, const Interaction &) = default;
};

struct Transition
{
  Identifier source;
  Interaction interaction;
  Identifier target;

  friend bool operator==(const Transition &, const Transition &) = default;
  friend auto operator<=>(const Transition &, const Transition &) = default;
};

/// A single region: initial state plus transitions in declaration order.
///
/// The state set is the initial state together with every transition
/// endpoint, in first-appearance order, so the state-membership invariants
/// hold by construction. Callee kinds and duplicate transitions are not
/// enforced here; `conform::validate` reports them.
struct Itg
{
  Identifier name;
  Identifier initial;
  std::vector<Transition> transitions;

  [[nodiscard]] std::vector<Identifier> states() const;

  friend bool operator==(const Itg &, const Itg &) = default;
};

/// Regions composed under orthogonal (interleaving) composition.
class SystemItg
{
public:
  [[nodiscard]] const Identifier & name() const noexcept { return name_; }
  [[nodiscard]] std::span<const Itg> regions() const noexcept { return regions_; }
  [[nodiscard]] const Itg * find_region(std::string_view name) const noexcept;
  [[nodiscard]] std::size_t transition_count() const noexcept;

  friend bool operator==(const SystemItg &, const SystemItg &) = default;

private:
  SystemItg(Identifier name, std::vector<Itg> regions)
      : name_(std::move(name)), regions_(std::move(regions))
  {
  }

  friend SystemItg compose(std::vector<Itg> regions, Identifier name);

  Identifier name_;
  std::vector<Itg> regions_;
};

/// Composes regions in the given order. Purely structural: no transition is
/// added, removed or rewritten.
[[nodiscard]] SystemItg compose(std::vector<Itg> regions, Identifier name);

/// Merges an operation call signature with its return signature: call
/// parameters then return parameters; identical duplicates collapse.
[[nodiscard]] OpSignature merge_signatures(const OpSignature & call, const OpSignature & ret);

}  // namespace sbc
