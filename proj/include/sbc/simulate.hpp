#pragma once

/// @file simulate.hpp
/// Executes a composed system as a labelled transition system. At every step
/// one transition is picked uniformly among all enabled transitions of all
/// regions; only the fired region moves.
///
/// Choice is driven by SplitMix64 so that traces are reproducible across
/// implementations. A pick among n enabled transitions draws 64-bit outputs
/// x until x >= (2^64 mod n), then takes x mod n.

#include "sbc/core.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sbc
{

class SplitMix64
{
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept
  {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased value in [0, bound). `bound` must be non-zero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept
  {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return x % bound;
  }

  [[nodiscard]] constexpr std::uint64_t state() const noexcept { return state_; }

  friend constexpr bool operator==(const SplitMix64 &, const SplitMix64 &) = default;

private:
  std::uint64_t state_;
};

/// The active state of each region, in system region order.
struct CompositeState
{
  std::vector<std::pair<Identifier, Identifier>> per_region;  // (region, active state)

  [[nodiscard]] const Identifier & active(std::size_t region_index) const { return per_region[region_index].second; }

  friend bool operator==(const CompositeState &, const CompositeState &) = default;
};

/// `s11,s21,s31`.
[[nodiscard]] std::string format_composite(const CompositeState & state);

struct EnabledTransition
{
  std::size_t region_index;
  Identifier region;
  Transition transition;

  friend bool operator==(const EnabledTransition &, const EnabledTransition &) = default;
};

struct TraceStep
{
  std::size_t step_index;  // 1-based
  Identifier region;
  Interaction interaction;
  CompositeState before;
  CompositeState after;

  friend bool operator==(const TraceStep &, const TraceStep &) = default;
};

struct Fired
{
  TraceStep step;
  CompositeState state;
  SplitMix64 rng;
};

struct Halted
{
};

using StepResult = std::variant<Fired, Halted>;

struct Trace
{
  std::vector<TraceStep> steps;
  bool halted = false;  // stopped early on a composite state with nothing enabled

  friend bool operator==(const Trace &, const Trace &) = default;
};

[[nodiscard]] CompositeState initial_state(const SystemItg & system);

/// Transitions leaving each region's active state, in region order then
/// declaration order. Throws ModelError(InvalidState) if `state` does not
/// match the system's regions.
[[nodiscard]] std::vector<EnabledTransition> enabled(const SystemItg & system, const CompositeState & state);

[[nodiscard]] StepResult step(
  const SystemItg & system, const CompositeState & state, SplitMix64 rng, std::size_t step_index = 1);

/// Steps from the initial state until `steps` transitions fired or the
/// system halts.
[[nodiscard]] Trace run(const SystemItg & system, std::size_t steps, std::uint64_t seed);

/// Like `run`, but restarts from the initial state whenever the system
/// halts, continuing the same random stream, until `step_budget` transitions
/// fired in total. Returns one trace per episode.
[[nodiscard]] std::vector<Trace> explore(const SystemItg & system, std::size_t step_budget, std::uint64_t seed);

/// One line per step: `<index> <region> <TAG> <caller> -> <callee> . <op>(<params>) [<before> => <after>]`,
/// then `halted` if the trace stopped early.
[[nodiscard]] std::string format_trace(const Trace & trace);

[[nodiscard]] std::string trace_to_json(const Trace & trace);

}  // namespace sbc
