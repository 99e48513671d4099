#include "sbc/simulate.hpp"

#include <json.hpp>

namespace sbc
{

std::string format_composite(const CompositeState & state)
{
  std::string out;
  for (const auto & [region, active] : state.per_region) {
    if (!out.empty()) out += ',';
    out += active.str();
  }
  return out;
}

CompositeState initial_state(const SystemItg & system)
{
  CompositeState cs;
  for (const auto & region : system.regions()) cs.per_region.emplace_back(region.name, region.initial);
  return cs;
}

std::vector<EnabledTransition> enabled(const SystemItg & system, const CompositeState & state)
{
  const auto regions = system.regions();
  if (state.per_region.size() != regions.size()) {
    throw ModelError(ErrorCode::InvalidState, "composite state does not have one entry per region");
  }
  std::vector<EnabledTransition> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto & region = regions[i];
    if (state.per_region[i].first != region.name) {
      throw ModelError(
        ErrorCode::InvalidState, "composite state entry " + std::to_string(i + 1) + " names region '" +
                                   state.per_region[i].first.str() + "', expected '" + region.name.str() + "'");
    }
    for (const auto & t : region.transitions) {
      if (t.source == state.active(i)) out.push_back({i, region.name, t});
    }
  }
  return out;
}

StepResult step(const SystemItg & system, const CompositeState & state, SplitMix64 rng, std::size_t step_index)
{
  auto candidates = enabled(system, state);
  if (candidates.empty()) return Halted{};
  auto & chosen = candidates[rng.below(candidates.size())];

  CompositeState after = state;
  after.per_region[chosen.region_index].second = chosen.transition.target;
  TraceStep ts{step_index, chosen.region, chosen.transition.interaction, state, after};
  return Fired{std::move(ts), std::move(after), rng};
}

namespace
{

// Runs one episode from the initial state; `rng` carries over to the caller.
Trace episode(const SystemItg & system, std::size_t steps, SplitMix64 & rng)
{
  Trace trace;
  CompositeState cs = initial_state(system);
  while (trace.steps.size() < steps) {
    auto result = step(system, cs, rng, trace.steps.size() + 1);
    if (std::holds_alternative<Halted>(result)) {
      trace.halted = true;
      break;
    }
    auto & fired = std::get<Fired>(result);
    cs = std::move(fired.state);
    rng = fired.rng;
    trace.steps.push_back(std::move(fired.step));
  }
  return trace;
}

}  // namespace

Trace run(const SystemItg & system, std::size_t steps, std::uint64_t seed)
{
  SplitMix64 rng(seed);
  return episode(system, steps, rng);
}

std::vector<Trace> explore(const SystemItg & system, std::size_t step_budget, std::uint64_t seed)
{
  SplitMix64 rng(seed);
  std::vector<Trace> out;
  std::size_t used = 0;
  while (used < step_budget) {
    Trace t = episode(system, step_budget - used, rng);
    used += t.steps.size();
    const bool stuck = t.steps.empty();
    out.push_back(std::move(t));
    if (stuck) break;  // the initial state itself is a deadlock
  }
  return out;
}

std::string format_trace(const Trace & trace)
{
  std::string out;
  for (const auto & s : trace.steps) {
    const auto & ia = s.interaction;
    out += std::to_string(s.step_index) + " " + s.region.str() + " ";
    out += to_string(ia.tag);
    out += " " + ia.caller.notation() + " -> " + ia.callee.notation() + " . " + format_signature(ia.signature());
    out += " [" + format_composite(s.before) + " => " + format_composite(s.after) + "]\n";
  }
  if (trace.halted) out += "halted\n";
  return out;
}

std::string trace_to_json(const Trace & trace)
{
  using json = nlohmann::ordered_json;
  auto composite = [](const CompositeState & cs) {
    json obj = json::object();
    for (const auto & [region, active] : cs.per_region) obj[region.str()] = active.str();
    return obj;
  };
  json steps = json::array();
  for (const auto & s : trace.steps) {
    const auto & ia = s.interaction;
    steps.push_back({
      {"index", s.step_index},
      {"REGION", s.region.str()},
      {"N", std::string(to_string(ia.tag))},
      {"XI", ia.caller.notation()},
      {"LAMBDA", ia.op_name.str()},
      {"THETA", format_params(ia.params)},
      {"GAMMA", ia.callee.notation()},
      {"before", composite(s.before)},
      {"after", composite(s.after)},
    });
  }
  json doc = {{"steps", std::move(steps)}, {"halted", trace.halted}};
  return doc.dump(2) + "\n";
}

}  // namespace sbc
