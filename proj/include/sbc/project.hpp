#pragma once

/// @file project.hpp
/// Projection of the class, state and sequence views from a system's
/// transition relation.

#include "sbc/core.hpp"
#include "sbc/diagnostic.hpp"

#include <cstddef>
#include <vector>

namespace sbc
{

struct ClassRow
{
  Agent class_name;  // always an object
  OpSignature signature;

  friend bool operator==(const ClassRow &, const ClassRow &) = default;
  friend auto operator<=>(const ClassRow &, const ClassRow &) = default;
};

/// Distinct rows in canonical order: class name, then operation name, then
/// parameter list.
struct ClassRelation
{
  std::vector<ClassRow> rows;

  friend bool operator==(const ClassRelation &, const ClassRelation &) = default;
};

/// Sorts into canonical order and drops duplicate rows.
[[nodiscard]] ClassRelation make_class_relation(std::vector<ClassRow> rows);

struct StateRow
{
  Identifier source;
  Tag tag;
  Identifier op_name;
  Identifier target;

  friend bool operator==(const StateRow &, const StateRow &) = default;
  friend auto operator<=>(const StateRow &, const StateRow &) = default;
};

struct StateRegion
{
  Identifier region;
  std::vector<StateRow> rows;

  friend bool operator==(const StateRegion &, const StateRegion &) = default;
};

struct StateRelationComposite
{
  std::vector<StateRegion> regions;

  friend bool operator==(const StateRelationComposite &, const StateRelationComposite &) = default;
};

struct SequenceRow
{
  std::size_t order;  // E, 1-based
  Tag tag;
  Agent caller;
  Identifier op_name;
  ParamList params;
  Agent callee;

  friend bool operator==(const SequenceRow &, const SequenceRow &) = default;
  friend auto operator<=>(const SequenceRow &, const SequenceRow &) = default;
};

struct SequenceRegion
{
  Identifier region;
  std::vector<SequenceRow> rows;

  friend bool operator==(const SequenceRegion &, const SequenceRegion &) = default;
};

struct SequenceRelationComposite
{
  std::vector<SequenceRegion> regions;

  friend bool operator==(const SequenceRelationComposite &, const SequenceRelationComposite &) =
    default;
};

struct SequenceProjection
{
  SequenceRelationComposite relation;
  std::vector<Diagnostic> warnings;  // BRANCHING_REGION only
};

/// Per region, selects the distinct call and return signatures of every
/// callee object, merges each call with its matching return (keyed by callee
/// and operation name), then unions the regions. Return-only entries yield no
/// row. Throws ModelError(AmbiguousReturn) when one call key matches two
/// distinct return parameter lists.
[[nodiscard]] ClassRelation project_class(const SystemItg & system);

/// One row per transition, in declaration order, per region.
[[nodiscard]] StateRelationComposite project_state(const SystemItg & system);

/// One row per transition, numbered 1..n in declaration order, per region.
/// Regions with branching states carry a warning since declaration order
/// need not be an execution order there.
[[nodiscard]] SequenceProjection project_sequence(const SystemItg & system);

/// States of `region` with two or more outgoing transitions, in
/// first-appearance order.
[[nodiscard]] std::vector<Identifier> branching_states(const Itg & region);

}  // namespace sbc
