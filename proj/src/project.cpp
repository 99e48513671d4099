#include "sbc/project.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace sbc
{

std::string_view to_string(Severity severity) noexcept
{
  return severity == Severity::Error ? "error" : "warning";
}

std::string_view to_string(DiagnosticCode code) noexcept
{
  switch (code) {
    case DiagnosticCode::UnmatchedRet: return "UNMATCHED_RET";
    case DiagnosticCode::UnmatchedCal: return "UNMATCHED_CAL";
    case DiagnosticCode::BranchingRegion: return "BRANCHING_REGION";
    case DiagnosticCode::UnreachableState: return "UNREACHABLE_STATE";
    case DiagnosticCode::DuplicateRow: return "DUPLICATE_ROW";
    case DiagnosticCode::BadAgentKind: return "BAD_AGENT_KIND";
  }
  return "UNKNOWN";
}

ClassRelation make_class_relation(std::vector<ClassRow> rows)
{
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return {std::move(rows)};
}

namespace
{

using CallKey = std::pair<Agent, Identifier>;  // (callee, operation)

// SELECT DISTINCT Γ, Λ, Θ ... WHERE N = tag, in first-appearance order.
std::vector<ClassRow> distinct_signatures(const Itg & region, Tag tag)
{
  std::vector<ClassRow> out;
  std::set<ClassRow> seen;
  for (const auto & t : region.transitions) {
    const auto & ia = t.interaction;
    if (ia.tag != tag) continue;
    ClassRow row{ia.callee, ia.signature()};
    if (seen.insert(row).second) out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ClassRelation project_class(const SystemItg & system)
{
  std::vector<ClassRow> all;
  for (const auto & region : system.regions()) {
    auto calls = distinct_signatures(region, Tag::Cal);
    auto returns = distinct_signatures(region, Tag::Ret);

    std::map<CallKey, std::vector<const ClassRow *>> returns_by_key;
    for (const auto & r : returns) {
      returns_by_key[{r.class_name, r.signature.op_name}].push_back(&r);
    }

    for (auto & call : calls) {
      auto it = returns_by_key.find({call.class_name, call.signature.op_name});
      if (it != returns_by_key.end()) {
        if (it->second.size() > 1) {
          throw ModelError(
            ErrorCode::AmbiguousReturn, "region '" + region.name.str() + "': " +
                                          call.class_name.notation() + "." +
                                          call.signature.op_name.str() +
                                          " has more than one distinct return parameter list");
        }
        call.signature = merge_signatures(call.signature, it->second.front()->signature);
      }
      all.push_back(std::move(call));
    }
  }
  return make_class_relation(std::move(all));
}

StateRelationComposite project_state(const SystemItg & system)
{
  StateRelationComposite out;
  for (const auto & region : system.regions()) {
    StateRegion projected{region.name, {}};
    projected.rows.reserve(region.transitions.size());
    for (const auto & t : region.transitions) {
      projected.rows.push_back({t.source, t.interaction.tag, t.interaction.op_name, t.target});
    }
    out.regions.push_back(std::move(projected));
  }
  return out;
}

std::vector<Identifier> branching_states(const Itg & region)
{
  std::map<Identifier, std::size_t> out_degree;
  for (const auto & t : region.transitions) ++out_degree[t.source];
  std::vector<Identifier> out;
  for (const auto & s : region.states()) {
    auto it = out_degree.find(s);
    if (it != out_degree.end() && it->second > 1) out.push_back(s);
  }
  return out;
}

SequenceProjection project_sequence(const SystemItg & system)
{
  SequenceProjection out;
  for (const auto & region : system.regions()) {
    SequenceRegion projected{region.name, {}};
    projected.rows.reserve(region.transitions.size());
    std::size_t order = 1;
    for (const auto & t : region.transitions) {
      const auto & ia = t.interaction;
      projected.rows.push_back({order++, ia.tag, ia.caller, ia.op_name, ia.params, ia.callee});
    }
    out.relation.regions.push_back(std::move(projected));

    auto branching = branching_states(region);
    if (!branching.empty()) {
      std::string names;
      for (const auto & s : branching) {
        if (!names.empty()) names += ", ";
        names += s.str();
      }
      out.warnings.push_back(
        {Severity::Warning, DiagnosticCode::BranchingRegion,
         "region '" + region.name.str() + "' branches at " + names +
           "; declaration order may not be an execution order",
         region.name.str(), std::nullopt});
    }
  }
  return out;
}

}  // namespace sbc
