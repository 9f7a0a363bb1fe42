#include "argwf/af.hpp"

#include <sstream>

#include "argwf/model.hpp"

namespace argwf {

std::string default_label(const Argument& a) {
  const char* prefix = "oj";
  switch (a.kind) {
    case ArgumentKind::OperatorJob: prefix = "oj"; break;
    case ArgumentKind::OperatorInstrument: prefix = "oi"; break;
    case ArgumentKind::JobInstrument: prefix = "ji"; break;
  }
  return std::string(prefix) + "_" + std::to_string(a.first) + "_" + std::to_string(a.second);
}

void ArgGraph::add_argument(const Argument& a) { args_.insert(a); }

void ArgGraph::add_attack(const Argument& from, const Argument& to) {
  if (!contains(from) || !contains(to))
    throw InputError("attack endpoint is not an argument of the graph");
  attacks_.emplace(from, to);
}

void ArgGraph::remove_attack(const Argument& from, const Argument& to) { attacks_.erase({from, to}); }

void ArgGraph::remove_attacks_onto(const Argument& to) {
  for (auto it = attacks_.begin(); it != attacks_.end();) {
    if (it->second == to)
      it = attacks_.erase(it);
    else
      ++it;
  }
}

namespace {

std::set<Argument> member_set(const ArgGraph& g, std::span<const Argument> extension) {
  std::set<Argument> members;
  for (const Argument& a : extension) {
    if (!g.contains(a)) throw InputError("extension contains unknown argument " + default_label(a));
    members.insert(a);
  }
  return members;
}

std::optional<Attack> first_internal_attack(const ArgGraph& g, const std::set<Argument>& members) {
  for (const Attack& at : g.attack_relation())
    if (members.count(at.first) && members.count(at.second)) return at;
  return std::nullopt;
}

}  // namespace

ConflictFreeResult is_conflict_free(const ArgGraph& g, std::span<const Argument> extension) {
  const auto members = member_set(g, extension);
  ConflictFreeResult out;
  out.witness = first_internal_attack(g, members);
  out.conflict_free = !out.witness.has_value();
  return out;
}

StableResult is_stable(const ArgGraph& g, std::span<const Argument> extension) {
  const auto members = member_set(g, extension);
  StableResult out;
  out.conflict = first_internal_attack(g, members);
  if (out.conflict) {
    out.stable = false;
    return out;
  }
  std::set<Argument> attacked;
  for (const Attack& at : g.attack_relation())
    if (members.count(at.first)) attacked.insert(at.second);
  for (const Argument& a : g.arguments()) {
    if (!members.count(a) && !attacked.count(a)) {
      out.stable = false;
      out.unattacked = a;
      break;
    }
  }
  return out;
}

std::string to_dot(const ArgGraph& g, std::span<const Argument> extension,
                   const std::function<std::string(const Argument&)>& label) {
  std::set<Argument> members(extension.begin(), extension.end());
  std::ostringstream out;
  out << "digraph AF {\n";
  for (const Argument& a : g.arguments()) {
    out << "  \"" << label(a) << "\"";
    if (members.count(a)) out << " [style=filled, fillcolor=lightblue]";
    out << ";\n";
  }
  for (const Attack& at : g.attack_relation())
    out << "  \"" << label(at.first) << "\" -> \"" << label(at.second) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace argwf
