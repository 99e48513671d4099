#include "sbc/conform.hpp"

#include <map>
#include <set>
#include <tuple>

namespace sbc
{
namespace
{

using MatchKey = std::tuple<Agent, Identifier, Agent>;  // (caller, operation, callee)

MatchKey match_key(const Interaction & ia) { return {ia.caller, ia.op_name, ia.callee}; }

// A call carrying out/inout parameters completes without a separate return.
bool returns_inline(const ParamList & params)
{
  return std::any_of(params.begin(), params.end(), [](const Parameter & p) { return p.direction != Direction::In; });
}

std::string describe(const Transition & t)
{
  const auto & ia = t.interaction;
  return t.source.str() + " -> " + t.target.str() + " : " + std::string(to_string(ia.tag)) + " " +
         ia.caller.notation() + " -> " + ia.callee.notation() + " . " + ia.op_name.str();
}

template <class Row>
void lcs_diff(const std::vector<Row> & ref, const std::vector<Row> & cand, RegionDelta<Row> & out)
{
  const std::size_t n = ref.size();
  const std::size_t m = cand.size();
  // lengths[i][j] = LCS length of ref[i..] and cand[j..]
  std::vector<std::vector<std::size_t>> lengths(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lengths[i][j] =
        ref[i] == cand[j] ? lengths[i + 1][j + 1] + 1 : std::max(lengths[i + 1][j], lengths[i][j + 1]);
    }
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (ref[i] == cand[j]) {
      ++i;
      ++j;
    } else if (lengths[i + 1][j] >= lengths[i][j + 1]) {
      out.missing.push_back(ref[i++]);
    } else {
      out.extra.push_back(cand[j++]);
    }
  }
  for (; i < n; ++i) out.missing.push_back(ref[i]);
  for (; j < m; ++j) out.extra.push_back(cand[j]);
}

template <class Row, class Region>
CompositeConformance<Row> diff_composite(const std::vector<Region> & reference, const std::vector<Region> & candidate)
{
  CompositeConformance<Row> out;
  auto find = [](const std::vector<Region> & regions, const Identifier & name) -> const Region * {
    auto it = std::find_if(regions.begin(), regions.end(), [&](const Region & r) { return r.region == name; });
    return it == regions.end() ? nullptr : &*it;
  };
  for (const auto & ref : reference) {
    RegionDelta<Row> delta;
    delta.region = ref.region.str();
    if (const Region * cand = find(candidate, ref.region)) {
      lcs_diff(ref.rows, cand->rows, delta);
    } else {
      delta.region_missing = true;
      delta.missing = ref.rows;
    }
    out.regions.push_back(std::move(delta));
  }
  for (const auto & cand : candidate) {
    if (find(reference, cand.region)) continue;
    RegionDelta<Row> delta;
    delta.region = cand.region.str();
    delta.region_extra = true;
    delta.extra = cand.rows;
    out.regions.push_back(std::move(delta));
  }
  return out;
}

}  // namespace

std::vector<Identifier> unreachable_states(const Itg & region)
{
  std::map<Identifier, std::vector<Identifier>> successors;
  for (const auto & t : region.transitions) successors[t.source].push_back(t.target);

  std::set<Identifier> reached{region.initial};
  std::vector<Identifier> frontier{region.initial};
  while (!frontier.empty()) {
    Identifier s = frontier.back();
    frontier.pop_back();
    auto it = successors.find(s);
    if (it == successors.end()) continue;
    for (const auto & next : it->second) {
      if (reached.insert(next).second) frontier.push_back(next);
    }
  }

  std::vector<Identifier> out;
  for (const auto & s : region.states()) {
    if (!reached.contains(s)) out.push_back(s);
  }
  return out;
}

std::vector<Diagnostic> validate(const SystemItg & system)
{
  std::vector<Diagnostic> out;
  for (const auto & region : system.regions()) {
    const std::string name = region.name.str();
    const auto & ts = region.transitions;

    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto & callee = ts[i].interaction.callee;
      if (!callee.is_object()) {
        out.push_back({Severity::Error, DiagnosticCode::BadAgentKind,
                       "callee '" + callee.name.str() + "' is an actor; only objects receive operations", name, i});
      }
    }

    std::set<Transition> seen;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!seen.insert(ts[i]).second) {
        out.push_back({Severity::Error, DiagnosticCode::DuplicateRow, "duplicate transition " + describe(ts[i]), name, i});
      }
    }

    std::set<MatchKey> calls;
    std::set<MatchKey> returns;
    for (const auto & t : ts) {
      (t.interaction.tag == Tag::Cal ? calls : returns).insert(match_key(t.interaction));
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto & ia = ts[i].interaction;
      if (ia.tag == Tag::Ret && !calls.contains(match_key(ia))) {
        out.push_back({Severity::Warning, DiagnosticCode::UnmatchedRet,
                       "return " + describe(ts[i]) + " has no matching call in the region", name, i});
      }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto & ia = ts[i].interaction;
      if (ia.tag == Tag::Cal && !returns.contains(match_key(ia)) && !returns_inline(ia.params)) {
        out.push_back({Severity::Warning, DiagnosticCode::UnmatchedCal,
                       "call " + describe(ts[i]) + " has no matching return in the region", name, i});
      }
    }

    auto branching = branching_states(region);
    if (!branching.empty()) {
      std::string states;
      for (const auto & s : branching) states += (states.empty() ? "" : ", ") + s.str();
      out.push_back({Severity::Warning, DiagnosticCode::BranchingRegion,
                     "region branches at " + states, name, std::nullopt});
    }

    for (const auto & s : unreachable_states(region)) {
      out.push_back({Severity::Warning, DiagnosticCode::UnreachableState,
                     "state '" + s.str() + "' is not reachable from '" + region.initial.str() + "'", name,
                     std::nullopt});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic> & diagnostics) noexcept
{
  return std::any_of(
    diagnostics.begin(), diagnostics.end(), [](const Diagnostic & d) { return d.severity == Severity::Error; });
}

ClassConformance diff_class(const ClassRelation & reference, const ClassRelation & candidate)
{
  const std::set<ClassRow> ref(reference.rows.begin(), reference.rows.end());
  const std::set<ClassRow> cand(candidate.rows.begin(), candidate.rows.end());
  ClassConformance out;
  std::set_difference(ref.begin(), ref.end(), cand.begin(), cand.end(), std::back_inserter(out.missing));
  std::set_difference(cand.begin(), cand.end(), ref.begin(), ref.end(), std::back_inserter(out.extra));
  return out;
}

StateConformance diff_state(const StateRelationComposite & reference, const StateRelationComposite & candidate)
{
  return diff_composite<StateRow>(reference.regions, candidate.regions);
}

SequenceConformance diff_sequence(
  const SequenceRelationComposite & reference, const SequenceRelationComposite & candidate)
{
  return diff_composite<SequenceRow>(reference.regions, candidate.regions);
}

ClassConformance check_class_view(const SystemItg & system, const ClassRelation & candidate)
{
  return diff_class(project_class(system), candidate);
}

StateConformance check_state_view(const SystemItg & system, const StateRelationComposite & candidate)
{
  return diff_state(project_state(system), candidate);
}

SequenceConformance check_sequence_view(const SystemItg & system, const SequenceRelationComposite & candidate)
{
  return diff_sequence(project_sequence(system).relation, candidate);
}

}  // namespace sbc
