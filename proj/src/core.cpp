#include "sbc/core.hpp"

#include <algorithm>
#include <set>

namespace sbc
{

std::string_view to_string(ErrorCode code) noexcept
{
  switch (code) {
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::DuplicateParameter: return "DuplicateParameter";
    case ErrorCode::EmptyRegionList: return "EmptyRegionList";
    case ErrorCode::DuplicateRegionName: return "DuplicateRegionName";
    case ErrorCode::NameMismatch: return "NameMismatch";
    case ErrorCode::DuplicateParamConflict: return "DuplicateParamConflict";
    case ErrorCode::AmbiguousReturn: return "AmbiguousReturn";
    case ErrorCode::MissingInitial: return "MissingInitial";
    case ErrorCode::InvalidState: return "InvalidState";
  }
  return "Unknown";
}

Identifier::Identifier(std::string value) : value_(std::move(value))
{
  if (!is_valid(value_)) {
    throw ModelError(ErrorCode::InvalidIdentifier, "invalid identifier '" + value_ + "'");
  }
}

bool Identifier::is_valid(std::string_view text) noexcept
{
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

Agent Agent::actor(std::string name) { return {AgentKind::Actor, Identifier(std::move(name))}; }

Agent Agent::object(std::string name) { return {AgentKind::Object, Identifier(std::move(name))}; }

std::string Agent::notation() const { return is_object() ? ":" + name.str() : name.str(); }

std::string_view to_string(Direction direction) noexcept
{
  switch (direction) {
    case Direction::In: return "in";
    case Direction::Out: return "out";
    case Direction::InOut: return "inout";
  }
  return "in";
}

std::optional<Direction> parse_direction(std::string_view text) noexcept
{
  if (text == "in") return Direction::In;
  if (text == "out") return Direction::Out;
  if (text == "inout") return Direction::InOut;
  return std::nullopt;
}

Parameter Parameter::in(std::string name) { return {Direction::In, Identifier(std::move(name)), {}}; }

Parameter Parameter::out(std::string name) { return {Direction::Out, Identifier(std::move(name)), {}}; }

Parameter Parameter::inout(std::string name)
{
  return {Direction::InOut, Identifier(std::move(name)), {}};
}

Parameter Parameter::typed(std::string type_name) const
{
  Parameter copy = *this;
  copy.type = Identifier(std::move(type_name));
  return copy;
}

std::string format_parameter(const Parameter & param)
{
  std::string out{to_string(param.direction)};
  out += ' ';
  out += param.name.str();
  if (param.type) {
    out += " : ";
    out += param.type->str();
  }
  return out;
}

ParamList::ParamList(std::vector<Parameter> params) : params_(std::move(params))
{
  std::set<std::string_view> seen;
  for (const auto & p : params_) {
    if (!seen.insert(p.name.str()).second) {
      throw ModelError(
        ErrorCode::DuplicateParameter, "parameter '" + p.name.str() + "' occurs twice in one list");
    }
  }
}

std::string format_params(const ParamList & params)
{
  std::string out;
  for (const auto & p : params) {
    if (!out.empty()) out += "; ";
    out += format_parameter(p);
  }
  return out;
}

std::string format_signature(const OpSignature & sig)
{
  return sig.op_name.str() + "(" + format_params(sig.params) + ")";
}

std::string_view to_string(Tag tag) noexcept { return tag == Tag::Cal ? "CAL" : "RET"; }

std::optional<Tag> parse_tag(std::string_view text) noexcept
{
  if (text == "CAL") return Tag::Cal;
  if (text == "RET") return Tag::Ret;
  return std::nullopt;
}

std::vector<Identifier> Itg::states() const
{
  std::vector<Identifier> out;
  std::set<std::string_view> seen;
  auto add = [&](const Identifier & s) {
    if (seen.insert(s.str()).second) out.push_back(s);
  };
  add(initial);
  for (const auto & t : transitions) {
    add(t.source);
    add(t.target);
  }
  return out;
}

const Itg * SystemItg::find_region(std::string_view name) const noexcept
{
  auto it = std::find_if(
    regions_.begin(), regions_.end(), [&](const Itg & r) { return r.name.str() == name; });
  return it == regions_.end() ? nullptr : &*it;
}

std::size_t SystemItg::transition_count() const noexcept
{
  std::size_t n = 0;
  for (const auto & r : regions_) n += r.transitions.size();
  return n;
}

SystemItg compose(std::vector<Itg> regions, Identifier name)
{
  if (regions.empty()) {
    throw ModelError(ErrorCode::EmptyRegionList, "a system needs at least one region");
  }
  std::set<std::string_view> seen;
  for (const auto & r : regions) {
    if (!seen.insert(r.name.str()).second) {
      throw ModelError(ErrorCode::DuplicateRegionName, "region '" + r.name.str() + "' is declared twice");
    }
  }
  return SystemItg(std::move(name), std::move(regions));
}

OpSignature merge_signatures(const OpSignature & call, const OpSignature & ret)
{
  if (call.op_name != ret.op_name) {
    throw ModelError(
      ErrorCode::NameMismatch,
      "cannot merge '" + call.op_name.str() + "' with '" + ret.op_name.str() + "'");
  }
  std::vector<Parameter> merged(call.params.begin(), call.params.end());
  for (const auto & p : ret.params) {
    auto same_name =
      std::find_if(merged.begin(), merged.end(), [&](const Parameter & q) { return q.name == p.name; });
    if (same_name == merged.end()) {
      merged.push_back(p);
    } else if (*same_name != p) {
      throw ModelError(
        ErrorCode::DuplicateParamConflict, "parameter '" + p.name.str() + "' of '" +
                                             call.op_name.str() +
                                             "' has conflicting direction or type");
    }
  }
  return {call.op_name, ParamList(std::move(merged))};
}

}  // namespace sbc
