#include "argwf/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

namespace argwf {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("ARGWF_EPS")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v >= 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> eps{initial_tolerance()};
  return eps;
}

template <typename Spec>
std::optional<std::size_t> find_by_id(const std::vector<Spec>& specs, const std::string& id) {
  for (std::size_t k = 0; k < specs.size(); ++k)
    if (specs[k].id == id) return k;
  return std::nullopt;
}

bool subset_of(const std::set<SkillIndex>& needed, const std::set<SkillIndex>& held) {
  return std::includes(held.begin(), held.end(), needed.begin(), needed.end());
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double eps) { tolerance_slot().store(eps, std::memory_order_relaxed); }

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::optional<OperatorIndex> ProblemInstance::find_operator(const std::string& id) const {
  return find_by_id(operators, id);
}
std::optional<JobIndex> ProblemInstance::find_job(const std::string& id) const {
  return find_by_id(jobs, id);
}
std::optional<InstrumentIndex> ProblemInstance::find_instrument(const std::string& id) const {
  return find_by_id(instruments, id);
}
std::optional<SkillIndex> ProblemInstance::find_skill(const std::string& id) const {
  auto it = std::find(skills.begin(), skills.end(), id);
  if (it == skills.end()) return std::nullopt;
  return static_cast<SkillIndex>(it - skills.begin());
}

bool ProblemInstance::has_job_skills(OperatorIndex i, JobIndex j) const {
  return subset_of(jobs[j].required_skills, operators[i].skills);
}

bool ProblemInstance::can_use_instrument(OperatorIndex i, InstrumentIndex t) const {
  return subset_of(instruments[t].required_skills, operators[i].skills);
}

bool ProblemInstance::qualified_for(OperatorIndex i, JobIndex j) const {
  if (!has_job_skills(i, j)) return false;
  for (InstrumentIndex t : jobs[j].required_instruments)
    if (!can_use_instrument(i, t)) return false;
  return true;
}

std::vector<StructuralError> validate_instance(const ProblemInstance& inst) {
  std::vector<StructuralError> errors;
  auto add = [&](std::string path, std::string msg) {
    errors.push_back({std::move(path), std::move(msg)});
  };

  if (!(inst.alpha >= 0.0)) add("$.alpha", "alpha must be non-negative");
  if (!(inst.beta >= 0.0)) add("$.beta", "beta must be non-negative");
  if (!(std::abs(inst.alpha + inst.beta - 1.0) <= 1e-12))
    add("$.alpha", "alpha + beta must equal 1");

  auto check_unique = [&](const auto& specs, const char* field) {
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < specs.size(); ++k)
      if (!seen.insert(specs[k].id).second)
        add(std::string("$.") + field + "[" + std::to_string(k) + "].id",
            "duplicate id '" + specs[k].id + "'");
  };
  check_unique(inst.operators, "operators");
  check_unique(inst.jobs, "jobs");
  check_unique(inst.instruments, "instruments");
  {
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < inst.skills.size(); ++k)
      if (!seen.insert(inst.skills[k]).second)
        add("$.skills[" + std::to_string(k) + "]", "duplicate skill '" + inst.skills[k] + "'");
  }

  auto check_skills = [&](const std::set<SkillIndex>& skills, const std::string& path) {
    for (SkillIndex s : skills)
      if (s >= inst.skills.size())
        add(path, "unknown skill index " + std::to_string(s));
  };
  for (std::size_t i = 0; i < inst.operators.size(); ++i)
    check_skills(inst.operators[i].skills, "$.operators[" + std::to_string(i) + "].skills");
  for (std::size_t t = 0; t < inst.instruments.size(); ++t)
    check_skills(inst.instruments[t].required_skills,
                 "$.instruments[" + std::to_string(t) + "].skills");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    check_skills(job.required_skills, "$.jobs[" + std::to_string(j) + "].skills");
    for (InstrumentIndex t : job.required_instruments)
      if (t >= inst.instruments.size())
        add("$.jobs[" + std::to_string(j) + "].instruments",
            "unknown instrument index " + std::to_string(t));
    if (!std::isfinite(job.location.x) || !std::isfinite(job.location.y))
      add("$.jobs[" + std::to_string(j) + "]", "job location must be finite");
  }

  const std::size_t m = inst.operators.size();
  const std::size_t n = inst.jobs.size();
  if (inst.processing.size() != m) {
    add("$.processing", "expected " + std::to_string(m) + " rows, got " +
                            std::to_string(inst.processing.size()));
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = inst.processing[i];
      const std::string path = "$.processing[" + std::to_string(i) + "]";
      if (row.size() != n) {
        add("$.processing", "row " + std::to_string(i) + ": expected " + std::to_string(n) +
                                " columns, got " + std::to_string(row.size()));
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (!(row[j] >= 0.0) || !std::isfinite(row[j]))
          add(path + "[" + std::to_string(j) + "]", "processing time must be finite and >= 0");
    }
  }
  return errors;
}

Schedule Schedule::empty_for(const ProblemInstance& inst) {
  Schedule s;
  s.routes.resize(inst.operator_count());
  s.instruments.resize(inst.operator_count());
  return s;
}

std::vector<std::string> structural_problems(const ProblemInstance& inst, const Schedule& sched) {
  std::vector<std::string> out;
  const std::size_t m = inst.operator_count();
  if (sched.routes.size() != m)
    out.push_back("schedule has " + std::to_string(sched.routes.size()) + " routes for " +
                  std::to_string(m) + " operators");
  if (sched.instruments.size() != m)
    out.push_back("schedule has " + std::to_string(sched.instruments.size()) +
                  " instrument sets for " + std::to_string(m) + " operators");
  for (std::size_t i = 0; i < sched.routes.size(); ++i) {
    std::set<JobIndex> seen;
    for (JobIndex j : sched.routes[i]) {
      if (j >= inst.job_count()) {
        out.push_back("route " + std::to_string(i) + " references unknown job index " +
                      std::to_string(j));
      } else if (!seen.insert(j).second) {
        out.push_back("job " + inst.jobs[j].id + " appears twice in the route of operator " +
                      (i < m ? inst.operators[i].id : std::to_string(i)));
      }
    }
  }
  for (std::size_t i = 0; i < sched.instruments.size(); ++i)
    for (InstrumentIndex t : sched.instruments[i])
      if (t >= inst.instrument_count())
        out.push_back("instrument set " + std::to_string(i) + " references unknown instrument index " +
                      std::to_string(t));
  return out;
}

bool is_feasible(const ProblemInstance& inst, const Schedule& sched) {
  if (!structural_problems(inst, sched).empty()) return false;
  for (const auto& holders : job_holders(inst, sched))
    if (holders.size() != 1) return false;
  return true;
}

std::vector<std::pair<JobIndex, JobIndex>> consecutive_pairs(const Schedule& sched, OperatorIndex i) {
  std::vector<std::pair<JobIndex, JobIndex>> out;
  const auto& route = sched.routes.at(i);
  for (std::size_t k = 1; k < route.size(); ++k) out.emplace_back(route[k - 1], route[k]);
  return out;
}

std::set<JobIndex> last_jobs(const Schedule& sched) {
  std::set<JobIndex> out;
  for (const auto& route : sched.routes)
    if (!route.empty()) out.insert(route.back());
  return out;
}

std::vector<std::vector<OperatorIndex>> job_holders(const ProblemInstance& inst, const Schedule& sched) {
  std::vector<std::vector<OperatorIndex>> out(inst.job_count());
  for (std::size_t i = 0; i < sched.routes.size(); ++i)
    for (JobIndex j : sched.routes[i])
      if (j < out.size() && (out[j].empty() || out[j].back() != i)) out[j].push_back(i);
  return out;
}

std::vector<std::vector<OperatorIndex>> instrument_holders(const ProblemInstance& inst,
                                                           const Schedule& sched) {
  std::vector<std::vector<OperatorIndex>> out(inst.instrument_count());
  for (std::size_t i = 0; i < sched.instruments.size(); ++i)
    for (InstrumentIndex t : sched.instruments[i])
      if (t < out.size()) out[t].push_back(i);
  return out;
}

}  // namespace argwf
