#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace sbc::support
{

std::string param_text(const Parameter & p)
{
  static const char * dirs[] = {"in", "out", "inout"};
  std::string s = dirs[static_cast<int>(p.direction)];
  s += " " + p.name.str();
  if (p.type) s += " : " + p.type->str();
  return s;
}

std::string params_text(const std::vector<Parameter> & ps)
{
  std::string s;
  for (const auto & p : ps) {
    if (!s.empty()) s += "; ";
    s += param_text(p);
  }
  return s;
}

std::string agent_text(const Agent & a)
{
  return (a.kind == AgentKind::Object ? ":" : "") + a.name.str();
}

std::set<Row> class_rows(const SystemItg & system)
{
  std::set<Row> out;
  for (const auto & region : system.regions()) {
    for (const auto & call : region.transitions) {
      const auto & ci = call.interaction;
      if (ci.tag != Tag::Cal) continue;
      std::vector<Parameter> merged(ci.params.begin(), ci.params.end());
      for (const auto & ret : region.transitions) {
        const auto & ri = ret.interaction;
        if (ri.tag != Tag::Ret || !(ri.callee == ci.callee) || !(ri.op_name == ci.op_name)) continue;
        for (const auto & p : ri.params) {
          if (std::find(merged.begin(), merged.end(), p) == merged.end()) merged.push_back(p);
        }
        break;  // one return list per key in generated systems
      }
      out.insert({agent_text(ci.callee), ci.op_name.str(), params_text(merged)});
    }
  }
  return out;
}

std::vector<Row> state_rows(const SystemItg & system)
{
  std::vector<Row> out;
  for (const auto & region : system.regions()) {
    for (const auto & t : region.transitions) {
      out.push_back({region.name.str(), t.source.str(), t.interaction.tag == Tag::Cal ? "CAL" : "RET",
                     t.interaction.op_name.str(), t.target.str()});
    }
  }
  return out;
}

std::vector<Row> sequence_rows(const SystemItg & system)
{
  std::vector<Row> out;
  for (const auto & region : system.regions()) {
    int e = 0;
    for (const auto & t : region.transitions) {
      const auto & ia = t.interaction;
      out.push_back({region.name.str(), std::to_string(++e), ia.tag == Tag::Cal ? "CAL" : "RET",
                     agent_text(ia.caller), ia.op_name.str(),
                     params_text(std::vector<Parameter>(ia.params.begin(), ia.params.end())), agent_text(ia.callee)});
    }
  }
  return out;
}

std::set<std::string> reachable(const Itg & region)
{
  std::map<std::string, std::size_t> index;
  auto id = [&](const std::string & s) { return index.emplace(s, index.size()).first->second; };
  id(region.initial.str());
  for (const auto & t : region.transitions) {
    id(t.source.str());
    id(t.target.str());
  }
  const std::size_t n = index.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto & t : region.transitions) r[id(t.source.str())][id(t.target.str())] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<std::string> out;
  const std::size_t init = id(region.initial.str());
  for (const auto & [name, i] : index) {
    if (r[init][i]) out.insert(name);
  }
  return out;
}

}  // namespace sbc::support
