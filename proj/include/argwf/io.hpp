#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "argwf/af.hpp"
#include "argwf/cost.hpp"
#include "argwf/explain.hpp"
#include "argwf/model.hpp"
#include "argwf/solver.hpp"

namespace argwf::io {

using json = nlohmann::json;

/// Sorted keys, every floating-point value printed with six decimals.
/// indent < 0 gives a single line.
std::string canonical_dump(const json& value, int indent = 2);

// Parsers throw InputError whose message starts with the JSON path of the
// offending value, e.g. "$.jobs[2].skills[0]: unknown skill 'Z'".

ProblemInstance problem_from_json(const json& doc);
ProblemInstance parse_problem(const std::string& text);
json problem_to_json(const ProblemInstance& inst);
std::string emit_problem(const ProblemInstance& inst);

Schedule schedule_from_json(const ProblemInstance& inst, const json& doc, const std::string& path = "$");
Schedule parse_schedule(const ProblemInstance& inst, const std::string& text);
json schedule_to_json(const ProblemInstance& inst, const Schedule& sched);
std::string emit_schedule(const ProblemInstance& inst, const Schedule& sched);

/// Id-based label, e.g. "a(O1,J3)", "a(O2,I1)", "a(J1,I2)".
std::string argument_label(const ProblemInstance& inst, const Argument& a);
json argument_to_json(const ProblemInstance& inst, const Argument& a);

json move_to_json(const ProblemInstance& inst, const MoveSuggestion& move);
MoveSuggestion move_from_json(const ProblemInstance& inst, const json& doc, const std::string& path = "$");

json explanation_to_json(const ProblemInstance& inst, const Explanation& e);
json cost_to_json(const ProblemInstance& inst, const CostReport& cost);

/// Graph export: {"arguments":[...], "attacks":[[from,to],...], "extension":[...]}.
json af_to_json(const ProblemInstance& inst, const ArgGraph& g, const std::vector<Argument>& extension);

/// The graph of one AF kind for a schedule, with the extension it is judged against.
struct AfView {
  ArgGraph graph;
  std::vector<Argument> extension;
};

/// Throws InputError for a malformed schedule.
AfView af_view(const ProblemInstance& inst, const Schedule& sched, AfKind kind);

std::string af_dot(const ProblemInstance& inst, const AfView& view);

}  // namespace argwf::io
