#include "sbc/emit.hpp"

#include <algorithm>
#include <set>

namespace sbc
{
namespace
{

std::string state_id(const Identifier & region, const Identifier & state)
{
  return region.str() + "__" + state.str();
}

std::string dot_quote(std::string_view text)
{
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_class_diagram(const ClassRelation & relation)
{
  const auto canonical = make_class_relation(relation.rows);
  std::string out = "@startuml\n";
  const Agent * open = nullptr;
  for (const auto & row : canonical.rows) {
    if (!open || *open != row.class_name) {
      if (open) out += "}\n";
      out += "class " + row.class_name.name.str() + " {\n";
      open = &row.class_name;
    }
    out += "  +" + format_signature(row.signature) + "\n";
  }
  if (open) out += "}\n";
  out += "@enduml\n";
  return out;
}

StateDiagramContext state_diagram_context(const SystemItg & system)
{
  StateDiagramContext ctx{system.name().str(), {}};
  for (const auto & region : system.regions()) {
    ctx.initial_states.emplace_back(region.name.str(), region.initial.str());
  }
  return ctx;
}

std::string emit_state_diagram(const StateRelationComposite & relation, const StateDiagramContext & context)
{
  std::string out = "@startuml\n";
  out += "state " + context.system_name + " {\n";
  bool first = true;
  for (const auto & region : relation.regions) {
    auto init_it = std::find_if(
      context.initial_states.begin(), context.initial_states.end(),
      [&](const auto & entry) { return entry.first == region.region.str(); });
    if (init_it == context.initial_states.end()) {
      throw ModelError(
        ErrorCode::MissingInitial, "no initial state given for region '" + region.region.str() + "'");
    }
    const Identifier initial(init_it->second);

    if (!first) out += "  --\n";
    first = false;

    std::vector<Identifier> states{initial};
    std::set<Identifier> seen{initial};
    for (const auto & row : region.rows) {
      for (const auto * s : {&row.source, &row.target}) {
        if (seen.insert(*s).second) states.push_back(*s);
      }
    }
    for (const auto & s : states) {
      out += "  state \"" + s.str() + "\" as " + state_id(region.region, s) + "\n";
    }
    out += "  [*] --> " + state_id(region.region, initial) + "\n";
    for (const auto & row : region.rows) {
      out += "  " + state_id(region.region, row.source) + " --> " + state_id(region.region, row.target) + " : ";
      out += to_string(row.tag);
      out += " " + row.op_name.str() + "\n";
    }
  }
  out += "}\n";
  out += "@enduml\n";
  return out;
}

std::string emit_sequence_diagram(const SequenceRelationComposite & relation)
{
  std::string out;
  for (const auto & region : relation.regions) {
    if (!out.empty()) out += "\n";
    out += "@startuml\n";
    out += "title " + region.region.str() + "\n";

    std::vector<Agent> agents;
    std::set<Agent> seen;
    for (const auto & row : region.rows) {
      for (const auto * a : {&row.caller, &row.callee}) {
        if (seen.insert(*a).second) agents.push_back(*a);
      }
    }
    std::set<Identifier> actor_names;
    for (const auto & a : agents) {
      if (!a.is_object()) actor_names.insert(a.name);
    }
    // An object sharing its name with an actor gets an alias.
    auto participant = [&](const Agent & a) {
      if (a.is_object() && actor_names.contains(a.name)) return "obj_" + a.name.str();
      return a.name.str();
    };
    for (const auto & a : agents) {
      if (!a.is_object()) {
        out += "actor " + a.name.str() + "\n";
      } else if (participant(a) != a.name.str()) {
        out += "participant \"" + a.name.str() + "\" as " + participant(a) + "\n";
      } else {
        out += "participant " + a.name.str() + "\n";
      }
    }
    for (const auto & row : region.rows) {
      const std::string message = row.op_name.str() + "(" + format_params(row.params) + ")";
      if (row.tag == Tag::Cal) {
        out += participant(row.caller) + " -> " + participant(row.callee) + " : " + message + "\n";
      } else {
        out += participant(row.callee) + " --> " + participant(row.caller) + " : " + message + "\n";
      }
    }
    out += "@enduml\n";
  }
  return out;
}

std::string emit_itg_graph(const SystemItg & system)
{
  std::string out = "digraph " + dot_quote(system.name().str()) + " {\n";
  out += "  node [shape=circle];\n";
  for (const auto & region : system.regions()) {
    const std::string prefix = region.name.str();
    auto node = [&](const Identifier & s) { return dot_quote(prefix + "." + s.str()); };
    const std::string entry = dot_quote(prefix + ":entry");

    out += "  subgraph " + dot_quote("cluster_" + prefix) + " {\n";
    out += "    label=" + dot_quote(prefix) + ";\n";
    out += "    " + entry + " [shape=point];\n";
    for (const auto & s : region.states()) {
      out += "    " + node(s) + " [label=" + dot_quote(s.str()) + "];\n";
    }
    out += "    " + entry + " -> " + node(region.initial) + ";\n";
    for (const auto & t : region.transitions) {
      const auto & ia = t.interaction;
      std::string label{to_string(ia.tag)};
      label += " " + ia.caller.name.str() + "→" + ia.callee.name.str() + "." + ia.op_name.str() + "(" +
               format_params(ia.params) + ")";
      out += "    " + node(t.source) + " -> " + node(t.target) + " [label=" + dot_quote(label) + "];\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace sbc
