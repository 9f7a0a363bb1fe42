#include "argwf/explain.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "argwf/cost.hpp"

namespace argwf {

const char* to_string(ExplanationCode code) {
  switch (code) {
    case ExplanationCode::NotFeasibleUnassigned: return "NOT_FEASIBLE_UNASSIGNED";
    case ExplanationCode::NotFeasibleMulti: return "NOT_FEASIBLE_MULTI";
    case ExplanationCode::NotExtendedEfficient: return "NOT_EXTENDED_EFFICIENT";
    case ExplanationCode::SkillViolation: return "SKILL_VIOLATION";
    case ExplanationCode::NotIndividuallyEfficient: return "NOT_INDIVIDUALLY_EFFICIENT";
    case ExplanationCode::InstrumentFeasibility: return "INSTRUMENT_FEASIBILITY";
    case ExplanationCode::InstrumentSkillViolation: return "INSTRUMENT_SKILL_VIOLATION";
    case ExplanationCode::JobInstrumentViolation: return "JOB_INSTRUMENT_VIOLATION";
    case ExplanationCode::MalformedSchedule: return "MALFORMED_SCHEDULE";
  }
  return "?";
}

const char* to_string(AfKind kind) {
  switch (kind) {
    case AfKind::Feasibility: return "feasibility";
    case AfKind::ExtendedCost: return "efficiency";
    case AfKind::Individual: return "individual";
    case AfKind::Skills: return "skills";
    case AfKind::Instruments: return "instrument";
    case AfKind::JobInstrument: return "job-instrument";
  }
  return "?";
}

std::optional<AfKind> af_kind_from_string(const std::string& text) {
  for (AfKind k : {AfKind::Feasibility, AfKind::ExtendedCost, AfKind::Individual, AfKind::Skills,
                   AfKind::Instruments, AfKind::JobInstrument})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::RelocateInter: return "relocate-inter";
    case MoveKind::SwapInter: return "swap-inter";
    case MoveKind::RelocateIntra: return "relocate-intra";
    case MoveKind::SwapIntra: return "swap-intra";
    case MoveKind::MoveInstrument: return "move-instrument";
  }
  return "?";
}

std::optional<MoveKind> move_kind_from_string(const std::string& text) {
  for (MoveKind k : {MoveKind::RelocateInter, MoveKind::SwapInter, MoveKind::RelocateIntra,
                     MoveKind::SwapIntra, MoveKind::MoveInstrument})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

bool is_efficiency_code(ExplanationCode code) {
  return code == ExplanationCode::NotExtendedEfficient ||
         code == ExplanationCode::NotIndividuallyEfficient;
}

MoveSuggestion suggestion_for(const ExchangeViolation& v) {
  MoveSuggestion s;
  s.from_operator = v.source_operator;
  s.to_operator = v.target_operator;
  s.job = v.job;
  s.position = v.target_position;
  s.other_job = v.other_job;
  s.predicted_delta = v.delta;
  switch (v.kind) {
    case ExchangeKind::SepPlus: s.kind = MoveKind::RelocateInter; break;
    case ExchangeKind::PepPlus: s.kind = MoveKind::SwapInter; break;
    case ExchangeKind::Isep: s.kind = MoveKind::RelocateIntra; break;
    case ExchangeKind::Ipep: s.kind = MoveKind::SwapIntra; break;
  }
  return s;
}

namespace {

struct ExtensionView {
  std::set<Argument> members;
  explicit ExtensionView(const std::vector<Argument>& e) : members(e.begin(), e.end()) {}
  bool has(const Argument& a) const { return members.count(a) != 0; }
};

std::vector<Attack> internal_attacks(const ArgGraph& g, const ExtensionView& e) {
  std::vector<Attack> out;
  for (const Attack& at : g.attack_relation())
    if (e.has(at.first) && e.has(at.second)) out.push_back(at);
  return out;
}

std::vector<Argument> unattacked_outside(const ArgGraph& g, const ExtensionView& e) {
  std::set<Argument> attacked;
  for (const Attack& at : g.attack_relation())
    if (e.has(at.first)) attacked.insert(at.second);
  std::vector<Argument> out;
  for (const Argument& a : g.arguments())
    if (!e.has(a) && !attacked.count(a)) out.push_back(a);
  return out;
}

bool attacks_extension(const ArgGraph& g, const Argument& b, const ExtensionView& e) {
  for (const Argument& a : e.members)
    if (g.attacks(b, a)) return true;
  return false;
}

// Best violation: largest delta, ties resolved by first occurrence, which
// follows entity index order.
const ExchangeViolation* best_of(const std::vector<const ExchangeViolation*>& candidates) {
  const ExchangeViolation* best = nullptr;
  for (const auto* v : candidates)
    if (best == nullptr || v->delta > best->delta + tolerance()) best = v;
  return best;
}

Explanation with_witness(ExplanationCode code, AfKind af, std::optional<Argument> attacker,
                         Argument target) {
  Explanation e;
  e.code = code;
  e.witness = Witness{af, attacker.has_value(), attacker, target};
  return e;
}

void attach(Explanation& e, const ExchangeViolation& v) {
  e.suggestion = suggestion_for(v);
  e.delta = v.delta;
}

std::string fmt2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string join_skills(const ProblemInstance& inst, const std::set<SkillIndex>& needed,
                        const std::set<SkillIndex>& held, std::size_t& count) {
  std::string out;
  count = 0;
  for (SkillIndex s : needed) {
    if (held.count(s)) continue;
    if (count++) out += ", ";
    out += inst.skills[s];
  }
  return out;
}

std::string operator_list(const ProblemInstance& inst, const std::vector<OperatorIndex>& ops) {
  std::string out;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k) out += k + 1 == ops.size() ? " and " : ", ";
    out += "operator " + inst.operators[ops[k]].id;
  }
  return out;
}

}  // namespace

std::vector<Explanation> explain(const ProblemInstance& inst, const Schedule& sched,
                                 const AfBundle& bundle) {
  std::vector<Explanation> out;
  const ExtensionView e_sched(schedule_extension(sched));
  const bool feasible = is_feasible(inst, sched);

  // Feasibility AF: attacks inside E are double assignments, non-attacks are
  // unassigned jobs. Both are reported once per job.
  {
    std::set<JobIndex> seen;
    for (const Attack& at : internal_attacks(bundle.feasibility, e_sched))
      if (seen.insert(at.second.second).second)
        out.push_back(with_witness(ExplanationCode::NotFeasibleMulti, AfKind::Feasibility, at.first,
                                   at.second));
    seen.clear();
    for (const Argument& b : unattacked_outside(bundle.feasibility, e_sched))
      if (seen.insert(b.second).second)
        out.push_back(
            with_witness(ExplanationCode::NotFeasibleUnassigned, AfKind::Feasibility, std::nullopt, b));
  }

  if (feasible) {
    // Swaps: attacks added on top of the feasibility relation.
    for (const Attack& at : internal_attacks(bundle.extended_cost, e_sched)) {
      if (bundle.feasibility.attacks(at.first, at.second)) continue;
      std::vector<const ExchangeViolation*> matches;
      for (const auto& v : bundle.pep)
        if (v.target_operator == at.first.first && *v.other_job == at.first.second &&
            v.source_operator == at.second.first && v.job == at.second.second)
          matches.push_back(&v);
      auto ex = with_witness(ExplanationCode::NotExtendedEfficient, AfKind::ExtendedCost, at.first,
                             at.second);
      if (const auto* v = best_of(matches)) attach(ex, *v);
      out.push_back(std::move(ex));
    }
    // Relocations: outside arguments E no longer attacks although they attack E.
    const auto holders = job_holders(inst, sched);
    for (const Argument& b : unattacked_outside(bundle.extended_cost, e_sched)) {
      if (!attacks_extension(bundle.extended_cost, b, e_sched)) continue;
      std::vector<const ExchangeViolation*> matches;
      for (const auto& v : bundle.sep)
        if (v.job == b.second && v.target_operator == b.first) matches.push_back(&v);
      auto ex = with_witness(ExplanationCode::NotExtendedEfficient, AfKind::ExtendedCost, std::nullopt, b);
      if (const auto* v = best_of(matches)) attach(ex, *v);
      out.push_back(std::move(ex));
    }
  }

  for (const Attack& at : internal_attacks(bundle.skills, e_sched))
    if (!bundle.feasibility.attacks(at.first, at.second))
      out.push_back(with_witness(ExplanationCode::SkillViolation, AfKind::Skills, at.first, at.second));

  for (const Attack& at : internal_attacks(bundle.individual, e_sched)) {
    if (bundle.feasibility.attacks(at.first, at.second)) continue;
    std::vector<const ExchangeViolation*> matches;
    if (at.first == at.second) {
      for (const auto& v : bundle.isep)
        if (v.source_operator == at.first.first && v.job == at.first.second) matches.push_back(&v);
    } else {
      for (const auto& v : bundle.ipep)
        if (v.source_operator == at.first.first && v.job == at.second.second &&
            *v.other_job == at.first.second)
          matches.push_back(&v);
      if (matches.empty()) continue;  // mirror direction of a pair already reported
    }
    auto ex = with_witness(ExplanationCode::NotIndividuallyEfficient, AfKind::Individual, at.first,
                           at.second);
    if (const auto* v = best_of(matches)) attach(ex, *v);
    out.push_back(std::move(ex));
  }

  {
    const ExtensionView e_tools(instrument_extension(sched));
    std::set<InstrumentIndex> seen;
    for (const Attack& at : internal_attacks(bundle.instruments, e_tools)) {
      if (at.first == at.second) {
        out.push_back(with_witness(ExplanationCode::InstrumentSkillViolation, AfKind::Instruments,
                                   at.first, at.second));
      } else if (seen.insert(at.second.second).second) {
        out.push_back(with_witness(ExplanationCode::InstrumentFeasibility, AfKind::Instruments,
                                   at.first, at.second));
      }
    }
    seen.clear();
    for (const Argument& b : unattacked_outside(bundle.instruments, e_tools))
      if (seen.insert(b.second).second)
        out.push_back(with_witness(ExplanationCode::InstrumentFeasibility, AfKind::Instruments,
                                   std::nullopt, b));
  }

  {
    const ExtensionView e_zeta(requirement_extension(inst));
    for (const Attack& at : internal_attacks(bundle.job_instrument, e_zeta))
      out.push_back(with_witness(ExplanationCode::JobInstrumentViolation, AfKind::JobInstrument,
                                 at.first, at.second));
  }

  std::stable_sort(out.begin(), out.end(), [](const Explanation& a, const Explanation& b) {
    if (a.code != b.code) return a.code < b.code;
    return *a.witness < *b.witness;
  });
  for (auto& ex : out) ex.message = render(inst, sched, ex);
  return out;
}

std::vector<Explanation> explain(const ProblemInstance& inst, const Schedule& sched) {
  const auto problems = structural_problems(inst, sched);
  if (!problems.empty()) {
    Explanation e;
    e.code = ExplanationCode::MalformedSchedule;
    e.message = "Malformed schedule: " + problems.front() + ".";
    return {e};
  }
  return explain(inst, sched, build_all(inst, sched));
}

namespace {

std::vector<JobIndex>::iterator locate(std::vector<JobIndex>& route, JobIndex job) {
  return std::find(route.begin(), route.end(), job);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConflictError("stale move: " + what);
}

}  // namespace

Schedule apply_move(const Schedule& sched, const MoveSuggestion& move) {
  Schedule out = sched;
  const std::size_t m = out.routes.size();
  auto valid_op = [&](OperatorIndex i) { return i < m; };

  switch (move.kind) {
    case MoveKind::RelocateInter: {
      require(valid_op(move.from_operator) && valid_op(move.to_operator) &&
                  move.from_operator != move.to_operator,
              "relocation needs two distinct operators");
      auto& src = out.routes[move.from_operator];
      auto& dst = out.routes[move.to_operator];
      auto it = locate(src, move.job);
      require(it != src.end(), "job is no longer on the source operator");
      require(move.position <= dst.size(), "target position out of range");
      src.erase(it);
      dst.insert(dst.begin() + static_cast<std::ptrdiff_t>(move.position), move.job);
      break;
    }
    case MoveKind::SwapInter: {
      require(valid_op(move.from_operator) && valid_op(move.to_operator) &&
                  move.from_operator != move.to_operator && move.other_job.has_value(),
              "swap needs two distinct operators and two jobs");
      auto& a = out.routes[move.from_operator];
      auto& b = out.routes[move.to_operator];
      auto ia = locate(a, move.job);
      auto ib = locate(b, *move.other_job);
      require(ia != a.end() && ib != b.end(), "swapped jobs have moved");
      std::swap(*ia, *ib);
      break;
    }
    case MoveKind::RelocateIntra: {
      require(valid_op(move.from_operator), "unknown operator");
      auto& route = out.routes[move.from_operator];
      auto it = locate(route, move.job);
      require(it != route.end(), "job is no longer on the operator");
      require(move.position < route.size(), "target position out of range");
      route.erase(it);
      route.insert(route.begin() + static_cast<std::ptrdiff_t>(move.position), move.job);
      break;
    }
    case MoveKind::SwapIntra: {
      require(valid_op(move.from_operator) && move.other_job.has_value(), "swap needs two jobs");
      auto& route = out.routes[move.from_operator];
      auto ia = locate(route, move.job);
      auto ib = locate(route, *move.other_job);
      require(ia != route.end() && ib != route.end() && ia != ib, "swapped jobs have moved");
      std::swap(*ia, *ib);
      break;
    }
    case MoveKind::MoveInstrument: {
      require(move.instrument.has_value() && valid_op(move.to_operator),
              "instrument move needs an instrument and a target operator");
      const InstrumentIndex t = *move.instrument;
      if (move.from_operator == kNoOperator) {
        for (const auto& held : out.instruments)
          require(!held.count(t), "instrument is already allocated");
      } else {
        require(valid_op(move.from_operator) && out.instruments[move.from_operator].count(t),
                "instrument is no longer held by the source operator");
        out.instruments[move.from_operator].erase(t);
      }
      out.instruments[move.to_operator].insert(t);
      break;
    }
  }
  return out;
}

std::string render(const ProblemInstance& inst, const Schedule& sched, const Explanation& e) {
  auto op = [&](std::size_t i) { return inst.operators[i].id; };
  auto job = [&](std::size_t j) { return inst.jobs[j].id; };
  auto tool = [&](std::size_t t) { return inst.instruments[t].id; };

  if (e.code == ExplanationCode::MalformedSchedule || !e.witness) return e.message;
  const Witness& w = *e.witness;
  const Argument& b = w.target;

  switch (e.code) {
    case ExplanationCode::NotFeasibleUnassigned:
      return "Job " + job(b.second) + " is not assigned to any operator.";
    case ExplanationCode::NotFeasibleMulti:
      return "Job " + job(b.second) + " is assigned to " +
             operator_list(inst, job_holders(inst, sched)[b.second]) + ".";
    case ExplanationCode::NotExtendedEfficient: {
      if (!e.suggestion) return "The schedule is not extended cost efficient.";
      const auto& s = *e.suggestion;
      if (s.kind == MoveKind::RelocateInter)
        return "Moving job " + job(s.job) + " from operator " + op(s.from_operator) + " to operator " +
               op(s.to_operator) + " (position " + std::to_string(s.position + 1) +
               ") reduces the maximum cost by " + fmt2(s.predicted_delta) + ".";
      return "Swapping job " + job(s.job) + " of operator " + op(s.from_operator) + " with job " +
             job(*s.other_job) + " of operator " + op(s.to_operator) +
             " reduces the maximum cost by " + fmt2(s.predicted_delta) + ".";
    }
    case ExplanationCode::SkillViolation: {
      std::size_t count = 0;
      const auto missing =
          join_skills(inst, inst.jobs[b.second].required_skills, inst.operators[b.first].skills, count);
      return "Operator " + op(b.first) + " lacks skill" + (count > 1 ? "s " : " ") + missing +
             " required by job " + job(b.second) + ".";
    }
    case ExplanationCode::NotIndividuallyEfficient: {
      if (!e.suggestion) return "The route is not individually cost efficient.";
      const auto& s = *e.suggestion;
      if (s.kind == MoveKind::RelocateIntra)
        return "Moving job " + job(s.job) + " to position " + std::to_string(s.position + 1) +
               " in the route of operator " + op(s.from_operator) + " reduces its travel distance by " +
               fmt2(s.predicted_delta) + ".";
      return "Swapping jobs " + job(s.job) + " and " + job(*s.other_job) + " in the route of operator " +
             op(s.from_operator) + " reduces its travel distance by " + fmt2(s.predicted_delta) + ".";
    }
    case ExplanationCode::InstrumentFeasibility: {
      const auto holders = instrument_holders(inst, sched)[b.second];
      if (holders.empty()) return "Instrument " + tool(b.second) + " is not allocated to any operator.";
      return "Instrument " + tool(b.second) + " is allocated to " + operator_list(inst, holders) + ".";
    }
    case ExplanationCode::InstrumentSkillViolation: {
      std::size_t count = 0;
      const auto missing = join_skills(inst, inst.instruments[b.second].required_skills,
                                       inst.operators[b.first].skills, count);
      return "Operator " + op(b.first) + " lacks skill" + (count > 1 ? "s " : " ") + missing +
             " required by instrument " + tool(b.second) + ".";
    }
    case ExplanationCode::JobInstrumentViolation: {
      const auto tool_ops = instrument_holders(inst, sched)[b.second];
      const auto job_ops = job_holders(inst, sched)[b.first];
      std::string text = "Job " + job(b.first) + " requires instrument " + tool(b.second) + ", which is ";
      text += tool_ops.empty() ? "not allocated to any operator" : "allocated to " + operator_list(inst, tool_ops);
      text += job_ops.empty() ? ", but the job is not assigned." : ", but the job is assigned to " +
                                                                       operator_list(inst, job_ops) + ".";
      return text;
    }
    case ExplanationCode::MalformedSchedule: break;
  }
  return e.message;
}

CappedExplanations cap_explanations(std::vector<Explanation> all, std::size_t cap) {
  CappedExplanations out;
  if (all.size() > cap) {
    out.suppressed = all.size() - cap;
    all.resize(cap);
  }
  out.items = std::move(all);
  return out;
}

}  // namespace argwf
