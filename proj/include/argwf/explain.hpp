#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "argwf/af.hpp"
#include "argwf/builders.hpp"
#include "argwf/model.hpp"

namespace argwf {

// Declaration order is the reporting order.
enum class ExplanationCode {
  NotFeasibleUnassigned,
  NotFeasibleMulti,
  NotExtendedEfficient,
  SkillViolation,
  NotIndividuallyEfficient,
  InstrumentFeasibility,
  InstrumentSkillViolation,
  JobInstrumentViolation,
  MalformedSchedule,
};

const char* to_string(ExplanationCode code);

enum class AfKind { Feasibility, ExtendedCost, Individual, Skills, Instruments, JobInstrument };

const char* to_string(AfKind kind);
std::optional<AfKind> af_kind_from_string(const std::string& text);

/// The attack (or non-attack) an explanation rests on. A non-attack has no
/// attacker: the extension E as a whole fails to attack `target`.
struct Witness {
  AfKind af = AfKind::Feasibility;
  bool attack = true;
  std::optional<Argument> attacker;
  Argument target;

  friend auto operator<=>(const Witness&, const Witness&) = default;
};

inline constexpr OperatorIndex kNoOperator = std::numeric_limits<OperatorIndex>::max();

enum class MoveKind { RelocateInter, SwapInter, RelocateIntra, SwapIntra, MoveInstrument };

const char* to_string(MoveKind kind);
std::optional<MoveKind> move_kind_from_string(const std::string& text);

/// A concrete schedule edit.
///
///  RelocateInter  `job` leaves `from_operator`, enters `to_operator` at index `position`.
///  SwapInter      `job` (on `from_operator`) and `other_job` (on `to_operator`) trade places.
///  RelocateIntra  `job` moves to index `position` of its own route (index after removal).
///  SwapIntra      `job` and `other_job` trade places inside `from_operator`'s route.
///  MoveInstrument `instrument` goes from `from_operator` (kNoOperator: unallocated) to `to_operator`.
struct MoveSuggestion {
  MoveKind kind = MoveKind::RelocateInter;
  OperatorIndex from_operator = 0;
  OperatorIndex to_operator = 0;
  JobIndex job = 0;
  std::size_t position = 0;
  std::optional<JobIndex> other_job;
  std::optional<InstrumentIndex> instrument;
  double predicted_delta = 0.0;

  friend bool operator==(const MoveSuggestion&, const MoveSuggestion&) = default;
};

MoveSuggestion suggestion_for(const ExchangeViolation& v);

struct Explanation {
  ExplanationCode code = ExplanationCode::NotFeasibleUnassigned;
  std::optional<Witness> witness;  // absent only for MalformedSchedule
  std::string message;
  std::optional<MoveSuggestion> suggestion;
  std::optional<double> delta;
};

/// All explanations for a schedule, ordered by code and then witness.
/// Empty iff the schedule is feasible, efficient, individually efficient,
/// meets skill requirements and has a valid instrument allocation.
std::vector<Explanation> explain(const ProblemInstance& inst, const Schedule& sched);

/// Explanations of an already-built bundle (schedule must be structurally sound).
std::vector<Explanation> explain(const ProblemInstance& inst, const Schedule& sched,
                                 const AfBundle& bundle);

bool is_efficiency_code(ExplanationCode code);

/// Throws ConflictError when the move no longer matches the schedule.
Schedule apply_move(const Schedule& sched, const MoveSuggestion& move);

std::string render(const ProblemInstance& inst, const Schedule& sched, const Explanation& e);

struct CappedExplanations {
  std::vector<Explanation> items;
  std::size_t suppressed = 0;
};

inline constexpr std::size_t kExplanationCap = 50;

CappedExplanations cap_explanations(std::vector<Explanation> all, std::size_t cap = kExplanationCap);

}  // namespace argwf
