#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace argwf {

enum class ArgumentKind { OperatorJob, OperatorInstrument, JobInstrument };

/// An argument a_{x,y}. For OperatorJob it is (operator, job), for
/// OperatorInstrument (operator, instrument), for JobInstrument (job, instrument).
struct Argument {
  ArgumentKind kind = ArgumentKind::OperatorJob;
  std::size_t first = 0;
  std::size_t second = 0;

  static Argument operator_job(std::size_t i, std::size_t j) {
    return {ArgumentKind::OperatorJob, i, j};
  }
  static Argument operator_instrument(std::size_t i, std::size_t t) {
    return {ArgumentKind::OperatorInstrument, i, t};
  }
  static Argument job_instrument(std::size_t j, std::size_t t) {
    return {ArgumentKind::JobInstrument, j, t};
  }

  friend auto operator<=>(const Argument&, const Argument&) = default;
};

using Attack = std::pair<Argument, Argument>;  // (attacker, target)

std::string default_label(const Argument& a);

/// Abstract argumentation framework: arguments plus a directed attack relation.
/// Arguments and attacks are kept in their natural total order, which makes
/// witnesses and exports deterministic.
class ArgGraph {
 public:
  ArgGraph() = default;

  void add_argument(const Argument& a);
  /// Both endpoints must already be arguments of the graph.
  void add_attack(const Argument& from, const Argument& to);
  void remove_attack(const Argument& from, const Argument& to);
  /// Drops every attack whose target is `to`.
  void remove_attacks_onto(const Argument& to);

  bool contains(const Argument& a) const { return args_.count(a) != 0; }
  bool attacks(const Argument& from, const Argument& to) const {
    return attacks_.count({from, to}) != 0;
  }

  const std::set<Argument>& arguments() const { return args_; }
  const std::set<Attack>& attack_relation() const { return attacks_; }
  std::size_t size() const { return args_.size(); }
  std::size_t attack_count() const { return attacks_.size(); }

  friend bool operator==(const ArgGraph&, const ArgGraph&) = default;

 private:
  std::set<Argument> args_;
  std::set<Attack> attacks_;
};

struct ConflictFreeResult {
  bool conflict_free = true;
  std::optional<Attack> witness;  // smallest attack inside E
};

struct StableResult {
  bool stable = true;
  std::optional<Attack> conflict;       // set when E is not conflict-free
  std::optional<Argument> unattacked;   // smallest outside argument E fails to attack
};

/// Throws InputError when E contains an argument unknown to g.
ConflictFreeResult is_conflict_free(const ArgGraph& g, std::span<const Argument> extension);
StableResult is_stable(const ArgGraph& g, std::span<const Argument> extension);

/// GraphViz rendering. Extension members are filled; edges are emitted in
/// attack order, so the text is byte-stable for a given graph.
std::string to_dot(const ArgGraph& g, std::span<const Argument> extension = {},
                   const std::function<std::string(const Argument&)>& label = default_label);

}  // namespace argwf
