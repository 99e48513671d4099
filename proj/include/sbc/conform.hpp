#pragma once

/// @file conform.hpp
/// Model lints and view conformance. A candidate view conforms iff it equals
/// the projection of the system: as a set for the class view, as an ordered
/// list per region for the state and sequence views.

#include "sbc/core.hpp"
#include "sbc/diagnostic.hpp"
#include "sbc/project.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sbc
{

/// All lint findings, grouped by region in system order. Errors:
/// BAD_AGENT_KIND, DUPLICATE_ROW. Warnings: UNMATCHED_RET, UNMATCHED_CAL,
/// BRANCHING_REGION, UNREACHABLE_STATE. A call is matched by a return with
/// the same caller, operation and callee, or by carrying out/inout
/// parameters itself.
[[nodiscard]] std::vector<Diagnostic> validate(const SystemItg & system);

/// States not reachable from the region's initial state.
[[nodiscard]] std::vector<Identifier> unreachable_states(const Itg & region);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic> & diagnostics) noexcept;

struct ClassConformance
{
  std::vector<ClassRow> missing;  // projected but absent from the candidate
  std::vector<ClassRow> extra;    // in the candidate but not projected

  [[nodiscard]] bool conformant() const noexcept { return missing.empty() && extra.empty(); }
};

template <class Row>
struct RegionDelta
{
  std::string region;
  bool region_missing = false;  // region absent from the candidate
  bool region_extra = false;    // region absent from the projection
  std::vector<Row> missing;
  std::vector<Row> extra;

  [[nodiscard]] bool conformant() const noexcept { return missing.empty() && extra.empty() && !region_missing && !region_extra; }
};

template <class Row>
struct CompositeConformance
{
  /// Every region of the projection (in order), then candidate-only regions.
  std::vector<RegionDelta<Row>> regions;

  [[nodiscard]] bool conformant() const noexcept
  {
    return std::all_of(regions.begin(), regions.end(), [](const auto & r) { return r.conformant(); });
  }

  [[nodiscard]] std::size_t missing_count() const noexcept
  {
    std::size_t n = 0;
    for (const auto & r : regions) n += r.missing.size();
    return n;
  }

  [[nodiscard]] std::size_t extra_count() const noexcept
  {
    std::size_t n = 0;
    for (const auto & r : regions) n += r.extra.size();
    return n;
  }

  [[nodiscard]] const RegionDelta<Row> * find(std::string_view region) const noexcept
  {
    auto it = std::find_if(regions.begin(), regions.end(), [&](const auto & r) { return r.region == region; });
    return it == regions.end() ? nullptr : &*it;
  }
};

using StateConformance = CompositeConformance<StateRow>;
using SequenceConformance = CompositeConformance<SequenceRow>;

/// Set difference in both directions.
[[nodiscard]] ClassConformance diff_class(const ClassRelation & reference, const ClassRelation & candidate);

/// Per region (matched by name), rows outside a longest common subsequence.
[[nodiscard]] StateConformance diff_state(
  const StateRelationComposite & reference, const StateRelationComposite & candidate);
[[nodiscard]] SequenceConformance diff_sequence(
  const SequenceRelationComposite & reference, const SequenceRelationComposite & candidate);

[[nodiscard]] ClassConformance check_class_view(const SystemItg & system, const ClassRelation & candidate);
[[nodiscard]] StateConformance check_state_view(
  const SystemItg & system, const StateRelationComposite & candidate);
[[nodiscard]] SequenceConformance check_sequence_view(
  const SystemItg & system, const SequenceRelationComposite & candidate);

}  // namespace sbc
