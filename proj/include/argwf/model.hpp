#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace argwf {

// Errors. The CLI maps each family onto its own exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConflictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CancelledError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using OperatorIndex = std::size_t;
using JobIndex = std::size_t;
using InstrumentIndex = std::size_t;
using SkillIndex = std::size_t;

/// Comparison tolerance for every strict inequality in the engine. Read once
/// from ARGWF_EPS (default 1e-9).
double tolerance();
/// Overrides the tolerance for the rest of the process. Used by tests and the CLI.
void set_tolerance(double eps);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

struct OperatorSpec {
  std::string id;
  std::set<SkillIndex> skills;
  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

struct JobSpec {
  std::string id;
  Point location;
  std::set<SkillIndex> required_skills;
  std::set<InstrumentIndex> required_instruments;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

struct InstrumentSpec {
  std::string id;
  std::set<SkillIndex> required_skills;
  friend bool operator==(const InstrumentSpec&, const InstrumentSpec&) = default;
};

// Skills, instruments and jobs are referenced by index into the instance's
// ordered lists; string ids exist for I/O and rendering only.
struct ProblemInstance {
  std::vector<OperatorSpec> operators;
  std::vector<JobSpec> jobs;
  std::vector<InstrumentSpec> instruments;
  std::vector<std::string> skills;
  std::vector<std::vector<double>> processing;  // [operator][job]
  double alpha = 0.5;
  double beta = 0.5;
  Point depot{};

  std::size_t operator_count() const { return operators.size(); }
  std::size_t job_count() const { return jobs.size(); }
  std::size_t instrument_count() const { return instruments.size(); }

  std::optional<OperatorIndex> find_operator(const std::string& id) const;
  std::optional<JobIndex> find_job(const std::string& id) const;
  std::optional<InstrumentIndex> find_instrument(const std::string& id) const;
  std::optional<SkillIndex> find_skill(const std::string& id) const;

  /// True iff operator i holds every skill job j requires.
  bool has_job_skills(OperatorIndex i, JobIndex j) const;
  /// True iff operator i holds every skill instrument t requires.
  bool can_use_instrument(OperatorIndex i, InstrumentIndex t) const;
  /// Job skills plus the skills of every instrument the job needs.
  bool qualified_for(OperatorIndex i, JobIndex j) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

struct StructuralError {
  std::string path;     // JSON-path style location, e.g. "$.processing[1]"
  std::string message;
  friend bool operator==(const StructuralError&, const StructuralError&) = default;
};

std::vector<StructuralError> validate_instance(const ProblemInstance& inst);

/// Job assignment, per-operator sequencing and instrument allocation.
/// Routes are ordered; the position of a job is its index in the route.
struct Schedule {
  std::vector<std::vector<JobIndex>> routes;              // [operator]
  std::vector<std::set<InstrumentIndex>> instruments;     // [operator]

  static Schedule empty_for(const ProblemInstance& inst);

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Problems that make a schedule unusable for any AF pass: wrong operator
/// count, unknown indices, or a job repeated inside one route.
std::vector<std::string> structural_problems(const ProblemInstance& inst, const Schedule& sched);

/// Every job in exactly one route (and the schedule structurally sound).
bool is_feasible(const ProblemInstance& inst, const Schedule& sched);

/// Consecutive pairs of each route (the y variables of the MILP).
std::vector<std::pair<JobIndex, JobIndex>> consecutive_pairs(const Schedule& sched, OperatorIndex i);
/// Jobs processed last on some operator (the z_j indicator).
std::set<JobIndex> last_jobs(const Schedule& sched);

/// For each job, the operators whose route contains it.
std::vector<std::vector<OperatorIndex>> job_holders(const ProblemInstance& inst, const Schedule& sched);
/// For each instrument, the operators that hold it.
std::vector<std::vector<OperatorIndex>> instrument_holders(const ProblemInstance& inst,
                                                           const Schedule& sched);

struct FixedDecisions {
  std::set<std::pair<OperatorIndex, JobIndex>> negative;
  std::set<std::pair<OperatorIndex, JobIndex>> positive;
};

/// Marker for the shared depot inside neighbour computations.
inline constexpr std::size_t kDepot = std::numeric_limits<std::size_t>::max();

/// Location of a route stop, where kDepot stands for the depot.
inline const Point& stop_location(const ProblemInstance& inst, std::size_t stop) {
  return stop == kDepot ? inst.depot : inst.jobs[stop].location;
}

inline double stop_distance(const ProblemInstance& inst, std::size_t a, std::size_t b) {
  return distance(stop_location(inst, a), stop_location(inst, b));
}

}  // namespace argwf
