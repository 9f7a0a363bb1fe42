#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

#include "argwf/cost.hpp"
#include "argwf/explain.hpp"
#include "argwf/model.hpp"

namespace argwf {

/// Cancellation contract for long searches: polled once per evaluated candidate.
struct SearchControl {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::stop_token stop;

  static SearchControl with_timeout(std::chrono::milliseconds budget) {
    SearchControl c;
    c.deadline = std::chrono::steady_clock::now() + budget;
    return c;
  }

  bool expired() const {
    if (stop.stop_requested()) return true;
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }
};

struct SolveResult {
  Schedule schedule;
  CostReport cost;
};

/// Largest number of (assignment, route order) combinations brute_force accepts.
inline constexpr std::uint64_t kBruteForceBound = 10'000'000;

/// n! * C(n+m-1, m-1): every way to split n jobs into m ordered routes.
/// Saturates at UINT64_MAX.
std::uint64_t search_space_size(std::size_t operators, std::size_t jobs);

/// Exact search. Minimises the makespan, then the remaining costs in
/// descending order, then prefers the lexicographically smallest assignment
/// vector and route orders. Instruments follow their requiring jobs; unused
/// ones go to the lowest-index qualified operator.
///
/// Throws BoundExceededError, InfeasibleError, CancelledError.
SolveResult brute_force(const ProblemInstance& inst, const SearchControl& control = {});

/// For each job, the operators it may go to: qualified for the job's skills
/// and instruments and for every job it shares an instrument with (directly
/// or transitively). Throws InfeasibleError naming the blocking job and
/// skill/instrument when some job has none, or an instrument nobody can use.
std::vector<std::vector<OperatorIndex>> allowed_operators(const ProblemInstance& inst);

/// Cheapest insertion in input order: each job goes to the slot minimising
/// the resulting makespan, then its own cost increase.
Schedule greedy_seed(const ProblemInstance& inst);

struct InstrumentConflict {
  InstrumentIndex instrument = 0;
  std::vector<JobIndex> jobs;  // requiring jobs spread over several operators
};

struct InstrumentRepair {
  Schedule schedule;
  std::vector<InstrumentConflict> conflicts;
  std::vector<MoveSuggestion> moves;
};

/// Puts every instrument with its requiring jobs where that operator can use
/// it, and allocates unused or badly held instruments to a qualified operator.
/// Throws InfeasibleError when nobody can use an instrument.
InstrumentRepair repair_instruments(const ProblemInstance& inst, const Schedule& sched);

struct LocalSearchResult {
  Schedule schedule;
  CostReport cost;
  std::vector<MoveSuggestion> trace;
  bool cancelled = false;
};

/// Best-improvement descent over the exchange-property moves (SEP+, PEP+,
/// ISEP, IPEP), instrument relocations and relocations out of unqualified
/// assignments. The objective is lexicographic: constraint violations, then
/// the descending cost vector, then total travel. Job moves drag instruments
/// along when that co-locates them with all their requiring jobs.
LocalSearchResult local_search(const ProblemInstance& inst, std::optional<Schedule> seed = std::nullopt,
                               const SearchControl& control = {});

/// Number of skill, instrument-skill, instrument-allocation and job-instrument
/// violations in a structurally sound schedule.
std::size_t constraint_violations(const ProblemInstance& inst, const Schedule& sched);

namespace reference {

/// Serial exhaustive search that enumerates route permutations per operator
/// directly, without the subset cache. Same result as argwf::brute_force.
SolveResult brute_force(const ProblemInstance& inst, const SearchControl& control = {});

}  // namespace reference

}  // namespace argwf
