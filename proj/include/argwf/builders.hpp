#pragma once

#include <optional>
#include <vector>

#include "argwf/af.hpp"
#include "argwf/cost.hpp"
#include "argwf/model.hpp"

namespace argwf {

enum class ExchangeKind { SepPlus, PepPlus, Isep, Ipep };

const char* to_string(ExchangeKind kind);

/// One failed exchange-property inequality together with the move that
/// exploits it.
///
/// Positions are 0-based route indices. `target_position` is the insertion
/// index for relocations (SEP+: index in the target route; ISEP: index in the
/// route after `job` has been removed) and the position of `other_job` for
/// swaps (PEP+, IPEP).
///
/// For SEP+/PEP+, `lhs` is C_i - C_i' and `rhs` the right-hand bound, and
/// `delta` is the predicted makespan decrease of the move. It is 0 when
/// another operator ties at the makespan, since no single move can lower it
/// then. For ISEP/IPEP, `lhs` is the current route distance, `rhs` the
/// distance after the move and `delta = lhs - rhs`.
struct ExchangeViolation {
  ExchangeKind kind = ExchangeKind::SepPlus;
  OperatorIndex source_operator = 0;
  JobIndex job = 0;
  std::size_t source_position = 0;
  OperatorIndex target_operator = 0;
  std::size_t target_position = 0;
  std::optional<JobIndex> other_job;
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
  // PEP+ premise: swapping `other_job` into the critical slot lowers C_i.
  double premise_lhs = 0.0;
  double premise_rhs = 0.0;

  friend bool operator==(const ExchangeViolation&, const ExchangeViolation&) = default;
};

// Extensions induced by a schedule.
std::vector<Argument> schedule_extension(const Schedule& sched);            // E ~ S
std::vector<Argument> instrument_extension(const Schedule& sched);          // E ~ SI
std::vector<Argument> requirement_extension(const ProblemInstance& inst);   // E ~ zeta

ArgGraph feasibility_af(const ProblemInstance& inst);
ArgGraph fixed_decision_af(const ProblemInstance& inst, const FixedDecisions& fd);

/// Pairs (i, j) where operator i misses a skill job j requires.
FixedDecisions skill_fixed_decisions(const ProblemInstance& inst);
ArgGraph skill_af(const ProblemInstance& inst);

// Inter-operator exchange properties. The schedule must be feasible; an
// infeasible one raises InputError (explain the feasibility AF first).
// These are the OpenMP kernels; argwf::reference holds the serial versions.
std::vector<ExchangeViolation> sep_plus_violations(const ProblemInstance& inst, const Schedule& sched);
std::vector<ExchangeViolation> pep_plus_violations(const ProblemInstance& inst, const Schedule& sched);

// Intra-route exchange properties, evaluated by full route recomputation.
// These only need a structurally sound schedule.
std::vector<ExchangeViolation> isep_violations(const ProblemInstance& inst, const Schedule& sched);
std::vector<ExchangeViolation> ipep_violations(const ProblemInstance& inst, const Schedule& sched);

ArgGraph extended_cost_af(const ProblemInstance& inst, const Schedule& sched);
ArgGraph extended_cost_af(const ProblemInstance& inst, const std::vector<ExchangeViolation>& sep,
                          const std::vector<ExchangeViolation>& pep);

ArgGraph individual_af(const ProblemInstance& inst, const Schedule& sched);
ArgGraph individual_af(const ProblemInstance& inst, const std::vector<ExchangeViolation>& isep,
                       const std::vector<ExchangeViolation>& ipep);

/// Arguments a_{i,t}: each instrument to exactly one operator, with
/// self-attacks where operator i lacks the instrument's skills.
ArgGraph instrument_feasibility_af(const ProblemInstance& inst);

/// Arguments a_{j,t}: self-attack whenever t is not held by (exactly) j's operator.
ArgGraph job_instrument_af(const ProblemInstance& inst, const Schedule& sched);

/// Every AF built for one (instance, schedule) pair.
struct AfBundle {
  ArgGraph feasibility;
  ArgGraph extended_cost;
  ArgGraph individual;
  ArgGraph skills;
  ArgGraph instruments;
  ArgGraph job_instrument;
  std::vector<ExchangeViolation> sep;
  std::vector<ExchangeViolation> pep;
  std::vector<ExchangeViolation> isep;
  std::vector<ExchangeViolation> ipep;
};

/// Requires a structurally sound schedule. Exchange violations are left empty
/// where the schedule is infeasible.
AfBundle build_all(const ProblemInstance& inst, const Schedule& sched);

namespace reference {

// Serial nested-loop versions of the scan kernels, kept for testing.
std::vector<ExchangeViolation> sep_plus_violations(const ProblemInstance& inst, const Schedule& sched);
std::vector<ExchangeViolation> pep_plus_violations(const ProblemInstance& inst, const Schedule& sched);

}  // namespace reference

}  // namespace argwf
