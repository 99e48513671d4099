#pragma once

/// @file emit.hpp
/// Diagram text for projected views (PlantUML) and for the transition graph
/// itself (DOT). Object names are shown without their leading colon. All
/// output is deterministic.

#include "sbc/core.hpp"
#include "sbc/project.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sbc
{

/// One `class` block per class, one `+op(params)` line per row.
[[nodiscard]] std::string emit_class_diagram(const ClassRelation & relation);

/// What a state diagram needs beyond the state relation itself.
struct StateDiagramContext
{
  std::string system_name;
  std::vector<std::pair<std::string, std::string>> initial_states;  // (region, initial state)
};

[[nodiscard]] StateDiagramContext state_diagram_context(const SystemItg & system);

/// One composite state holding every region, regions separated by `--`.
/// State ids are qualified by region so that names may repeat across
/// regions. Throws ModelError(MissingInitial) when `context` lacks a region.
[[nodiscard]] std::string emit_state_diagram(
  const StateRelationComposite & relation, const StateDiagramContext & context);

/// One `@startuml` document per region, separated by a blank line. Calls are
/// solid arrows caller -> callee; returns are dashed arrows callee --> caller.
[[nodiscard]] std::string emit_sequence_diagram(const SequenceRelationComposite & relation);

/// DOT digraph: one cluster per region, an entry point into each initial
/// state, one labelled edge per transition.
[[nodiscard]] std::string emit_itg_graph(const SystemItg & system);

}  // namespace sbc
