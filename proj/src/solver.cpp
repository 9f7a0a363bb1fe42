#include "argwf/solver.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "argwf/builders.hpp"

namespace argwf {

std::uint64_t search_space_size(std::size_t operators, std::size_t jobs) {
  constexpr std::uint64_t kMax = UINT64_MAX;
  if (operators == 0) return jobs == 0 ? 1 : 0;
  auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  // n! * C(n+m-1, m-1) = (n+m-1)! / (m-1)!
  std::uint64_t total = 1;
  for (std::uint64_t k = operators; k < operators + jobs; ++k) total = mul(total, k);
  return total;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<JobIndex>> requiring_jobs(const ProblemInstance& inst) {
  std::vector<std::vector<JobIndex>> out(inst.instrument_count());
  for (JobIndex j = 0; j < inst.job_count(); ++j)
    for (InstrumentIndex t : inst.jobs[j].required_instruments) out[t].push_back(j);
  return out;
}

// Jobs sharing an instrument (transitively) must be on one operator.
std::vector<std::size_t> instrument_components(const ProblemInstance& inst) {
  DisjointSets sets(inst.job_count());
  for (const auto& jobs : requiring_jobs(inst))
    for (std::size_t k = 1; k < jobs.size(); ++k) sets.unite(jobs[0], jobs[k]);
  std::vector<std::size_t> comp(inst.job_count());
  for (JobIndex j = 0; j < inst.job_count(); ++j) comp[j] = sets.find(j);
  return comp;
}

std::string skill_names(const ProblemInstance& inst, const std::set<SkillIndex>& skills) {
  std::string out = "{";
  bool first = true;
  for (SkillIndex s : skills) {
    if (!first) out += ",";
    out += inst.skills[s];
    first = false;
  }
  return out + "}";
}

void require_valid(const ProblemInstance& inst) {
  const auto errors = validate_instance(inst);
  if (!errors.empty()) throw InputError(errors.front().path + ": " + errors.front().message);
}

// Instruments follow their requiring jobs; the rest go to the lowest-index
// operator able to use them.
std::vector<std::set<InstrumentIndex>> allocate_instruments(const ProblemInstance& inst,
                                                            const std::vector<std::vector<JobIndex>>& routes) {
  std::vector<std::set<InstrumentIndex>> out(inst.operator_count());
  std::vector<OperatorIndex> holder(inst.job_count(), kNoOperator);
  for (OperatorIndex i = 0; i < routes.size(); ++i)
    for (JobIndex j : routes[i]) holder[j] = i;
  const auto requiring = requiring_jobs(inst);
  for (InstrumentIndex t = 0; t < inst.instrument_count(); ++t) {
    OperatorIndex target = kNoOperator;
    for (JobIndex j : requiring[t])
      if (holder[j] != kNoOperator) {
        target = holder[j];
        break;
      }
    if (target == kNoOperator)
      for (OperatorIndex i = 0; i < inst.operator_count(); ++i)
        if (inst.can_use_instrument(i, t)) {
          target = i;
          break;
        }
    if (target != kNoOperator) out[target].insert(t);
  }
  return out;
}

// Best ordering of a job set: lexicographically first permutation among those
// within tolerance of the shortest tour.
std::pair<double, std::vector<JobIndex>> best_order(const ProblemInstance& inst, std::vector<JobIndex> jobs,
                                                    double eps) {
  std::sort(jobs.begin(), jobs.end());
  double best = route_distance(inst, jobs);
  std::vector<JobIndex> order = jobs;
  while (std::next_permutation(jobs.begin(), jobs.end())) {
    const double d = route_distance(inst, jobs);
    if (d < best - eps) {
      best = d;
      order = jobs;
    }
  }
  return {best, order};
}

struct AssignmentModel {
  const ProblemInstance& inst;
  std::size_t m;
  std::size_t n;
  std::vector<std::vector<char>> allowed;        // [operator][job]
  std::vector<std::vector<JobIndex>> requiring;  // [instrument]
  std::uint64_t total = 1;
  double eps;

  explicit AssignmentModel(const ProblemInstance& in)
      : inst(in), m(in.operator_count()), n(in.job_count()), eps(tolerance()) {
    require_valid(inst);
    const std::uint64_t space = search_space_size(m, n);
    if (space > kBruteForceBound)
      throw BoundExceededError("search space of " + std::to_string(space) +
                               " schedules exceeds the exhaustive-search bound of " +
                               std::to_string(kBruteForceBound));
    const auto ops = allowed_operators(inst);
    allowed.assign(m, std::vector<char>(n, 0));
    for (JobIndex j = 0; j < n; ++j)
      for (OperatorIndex i : ops[j]) allowed[i][j] = 1;
    requiring = requiring_jobs(inst);
    for (std::size_t k = 0; k < n; ++k) total *= m;
  }

  // Digits of the assignment vector; job 0 is the most significant, so codes
  // enumerate assignment vectors in lexicographic order.
  bool decode(std::uint64_t code, std::vector<OperatorIndex>& assign) const {
    for (std::size_t k = n; k-- > 0;) {
      assign[k] = static_cast<OperatorIndex>(code % m);
      code /= m;
      if (!allowed[assign[k]][k]) return false;
    }
    for (const auto& jobs : requiring)
      for (std::size_t k = 1; k < jobs.size(); ++k)
        if (assign[jobs[k]] != assign[jobs[0]]) return false;
    return true;
  }

  SolveResult finish(const std::vector<OperatorIndex>& assign,
                     const std::vector<std::vector<JobIndex>>& routes) const {
    (void)assign;
    SolveResult r;
    r.schedule.routes = routes;
    r.schedule.instruments = allocate_instruments(inst, routes);
    r.cost = cost_report(inst, r.schedule);
    return r;
  }
};

struct Candidate {
  bool found = false;
  std::uint64_t code = 0;
  std::vector<double> key;
};

bool improves(const std::vector<double>& key, const Candidate& best, double eps) {
  return !best.found || compare_sorted_costs(key, best.key, eps) < 0;
}

}  // namespace

std::vector<std::vector<OperatorIndex>> allowed_operators(const ProblemInstance& inst) {
  const std::size_t m = inst.operator_count();
  const std::size_t n = inst.job_count();
  std::vector<std::string> blocking;

  for (InstrumentIndex t = 0; t < inst.instrument_count(); ++t) {
    bool usable = false;
    for (OperatorIndex i = 0; i < m; ++i) usable = usable || inst.can_use_instrument(i, t);
    if (!usable)
      blocking.push_back("instrument " + inst.instruments[t].id + ": no operator has skills " +
                         skill_names(inst, inst.instruments[t].required_skills));
  }

  std::vector<std::vector<char>> qualified(n, std::vector<char>(m, 0));
  for (JobIndex j = 0; j < n; ++j) {
    bool any = false;
    for (OperatorIndex i = 0; i < m; ++i) {
      qualified[j][i] = inst.qualified_for(i, j);
      any = any || qualified[j][i];
    }
    if (!any) {
      std::string why = "job " + inst.jobs[j].id + ": no operator has skills " +
                        skill_names(inst, inst.jobs[j].required_skills);
      for (InstrumentIndex t : inst.jobs[j].required_instruments)
        why += " and can use instrument " + inst.instruments[t].id;
      blocking.push_back(why);
    }
  }

  const auto comp = instrument_components(inst);
  std::vector<std::vector<char>> comp_ok(n, std::vector<char>(m, 1));
  for (JobIndex j = 0; j < n; ++j)
    for (OperatorIndex i = 0; i < m; ++i) comp_ok[comp[j]][i] = comp_ok[comp[j]][i] && qualified[j][i];

  std::vector<std::vector<OperatorIndex>> out(n);
  for (JobIndex j = 0; j < n; ++j) {
    for (OperatorIndex i = 0; i < m; ++i)
      if (comp_ok[comp[j]][i]) out[j].push_back(i);
    if (out[j].empty() && blocking.empty())
      blocking.push_back("job " + inst.jobs[j].id +
                         ": no single operator qualifies for every job sharing its instruments");
  }
  if (!blocking.empty()) {
    std::string msg = "infeasible constraints";
    for (const auto& b : blocking) msg += "; " + b;
    throw InfeasibleError(msg);
  }
  return out;
}

SolveResult brute_force(const ProblemInstance& inst, const SearchControl& control) {
  const AssignmentModel model(inst);
  const std::size_t n = model.n;
  const std::size_t subsets = std::size_t{1} << n;
  const double eps = model.eps;

  // Shortest ordering of every job subset; distance does not depend on the operator.
  std::vector<double> subset_distance(subsets, 0.0);
  std::vector<std::vector<JobIndex>> subset_order(subsets);
  const long subset_count = static_cast<long>(subsets);
#pragma omp parallel for schedule(dynamic, 16)
  for (long s = 0; s < subset_count; ++s) {
    std::vector<JobIndex> jobs;
    for (std::size_t j = 0; j < n; ++j)
      if (static_cast<std::size_t>(s) >> j & 1U) jobs.push_back(j);
    auto [d, order] = best_order(inst, std::move(jobs), eps);
    subset_distance[static_cast<std::size_t>(s)] = d;
    subset_order[static_cast<std::size_t>(s)] = std::move(order);
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::vector<Candidate> bests(static_cast<std::size_t>(threads));
  std::atomic<bool> cancelled{false};

#pragma omp parallel num_threads(threads)
  {
    int tid = 0;
    int team = 1;
#ifdef _OPENMP
    tid = omp_get_thread_num();
    team = omp_get_num_threads();
#endif
    const std::uint64_t begin = model.total * static_cast<std::uint64_t>(tid) / static_cast<std::uint64_t>(team);
    const std::uint64_t end =
        model.total * static_cast<std::uint64_t>(tid + 1) / static_cast<std::uint64_t>(team);
    Candidate& best = bests[static_cast<std::size_t>(tid)];
    std::vector<OperatorIndex> assign(n);
    std::vector<std::size_t> masks(model.m);
    std::vector<double> costs(model.m);
    for (std::uint64_t code = begin; code < end; ++code) {
      if (cancelled.load(std::memory_order_relaxed)) break;
      if (control.expired()) {
        cancelled = true;
        break;
      }
      if (!model.decode(code, assign)) continue;
      std::fill(masks.begin(), masks.end(), 0);
      std::fill(costs.begin(), costs.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        masks[assign[j]] |= std::size_t{1} << j;
        costs[assign[j]] += inst.alpha * inst.processing[assign[j]][j];
      }
      for (std::size_t i = 0; i < model.m; ++i) costs[i] += inst.beta * subset_distance[masks[i]];
      auto key = sorted_costs(costs);
      if (improves(key, best, eps)) {
        best.found = true;
        best.code = code;
        best.key = std::move(key);
      }
    }
  }
  if (cancelled) throw CancelledError("exhaustive search cancelled");

  Candidate winner;
  for (const auto& c : bests)
    if (c.found && improves(c.key, winner, eps)) winner = c;
  if (!winner.found && model.m > 0 && n > 0)
    throw InfeasibleError("no assignment satisfies the skill and instrument co-location constraints");

  std::vector<OperatorIndex> assign(n);
  model.decode(winner.code, assign);
  std::vector<std::size_t> masks(model.m, 0);
  for (std::size_t j = 0; j < n; ++j) masks[assign[j]] |= std::size_t{1} << j;
  std::vector<std::vector<JobIndex>> routes(model.m);
  for (std::size_t i = 0; i < model.m; ++i) routes[i] = subset_order[masks[i]];
  return model.finish(assign, routes);
}

namespace reference {

SolveResult brute_force(const ProblemInstance& inst, const SearchControl& control) {
  const AssignmentModel model(inst);
  const double eps = model.eps;
  Candidate best;
  std::vector<std::vector<JobIndex>> best_routes;
  std::vector<OperatorIndex> assign(model.n);
  for (std::uint64_t code = 0; code < model.total; ++code) {
    if (control.expired()) throw CancelledError("exhaustive search cancelled");
    if (!model.decode(code, assign)) continue;
    std::vector<std::vector<JobIndex>> routes(model.m);
    for (std::size_t j = 0; j < model.n; ++j) routes[assign[j]].push_back(j);
    std::vector<double> costs(model.m);
    for (std::size_t i = 0; i < model.m; ++i) {
      auto [d, order] = best_order(inst, routes[i], eps);
      routes[i] = std::move(order);
      double processing = 0.0;
      for (JobIndex j : routes[i]) processing += inst.processing[i][j];
      costs[i] = inst.alpha * processing + inst.beta * d;
    }
    auto key = sorted_costs(costs);
    if (improves(key, best, eps)) {
      best.found = true;
      best.code = code;
      best.key = std::move(key);
      best_routes = std::move(routes);
    }
  }
  if (!best.found) {
    if (model.m > 0 && model.n > 0)
      throw InfeasibleError("no assignment satisfies the skill and instrument co-location constraints");
    best_routes.assign(model.m, {});
  }
  model.decode(best.code, assign);
  return model.finish(assign, best_routes);
}

}  // namespace reference

namespace {

struct Insertion {
  OperatorIndex op = kNoOperator;
  std::size_t slot = 0;
  double makespan = 0.0;
  double increase = 0.0;
};

Insertion cheapest_insertion(const ProblemInstance& inst, const Schedule& sched, const std::vector<double>& costs,
                             JobIndex j, const std::vector<OperatorIndex>& candidates) {
  const double eps = tolerance();
  const double makespan = costs.empty() ? 0.0 : *std::max_element(costs.begin(), costs.end());
  Insertion best;
  for (OperatorIndex i : candidates) {
    const auto& route = sched.routes[i];
    for (std::size_t slot = 0; slot <= route.size(); ++slot) {
      const std::size_t pred = slot > 0 ? route[slot - 1] : kDepot;
      const std::size_t succ = slot < route.size() ? route[slot] : kDepot;
      const double detour = stop_distance(inst, pred, j) + stop_distance(inst, j, succ) -
                            stop_distance(inst, pred, succ);
      const double increase = inst.alpha * inst.processing[i][j] + inst.beta * detour;
      const double result = std::max(makespan, costs[i] + increase);
      const bool better = best.op == kNoOperator || result < best.makespan - eps ||
                          (result <= best.makespan + eps && increase < best.increase - eps);
      if (better) best = {i, slot, result, increase};
    }
  }
  return best;
}

void insert_jobs(const ProblemInstance& inst, Schedule& sched, const std::vector<JobIndex>& jobs) {
  const auto allowed = allowed_operators(inst);
  const auto comp = instrument_components(inst);
  std::vector<OperatorIndex> pinned(inst.job_count(), kNoOperator);
  for (OperatorIndex i = 0; i < sched.routes.size(); ++i)
    for (JobIndex j : sched.routes[i]) pinned[comp[j]] = i;
  std::vector<double> costs(inst.operator_count());
  for (OperatorIndex i = 0; i < costs.size(); ++i) costs[i] = operator_cost(inst, sched, i);

  for (JobIndex j : jobs) {
    std::vector<OperatorIndex> candidates;
    for (OperatorIndex i : allowed[j])
      if (pinned[comp[j]] == kNoOperator || pinned[comp[j]] == i) candidates.push_back(i);
    if (candidates.empty()) candidates = allowed[j];
    const Insertion ins = cheapest_insertion(inst, sched, costs, j, candidates);
    auto& route = sched.routes[ins.op];
    route.insert(route.begin() + static_cast<std::ptrdiff_t>(ins.slot), j);
    costs[ins.op] += ins.increase;
    if (pinned[comp[j]] == kNoOperator) pinned[comp[j]] = ins.op;
  }
}

}  // namespace

Schedule greedy_seed(const ProblemInstance& inst) {
  require_valid(inst);
  if (inst.operator_count() == 0 && inst.job_count() > 0)
    throw InfeasibleError("infeasible constraints; no operators for " + std::to_string(inst.job_count()) +
                          " jobs");
  Schedule sched = Schedule::empty_for(inst);
  std::vector<JobIndex> order(inst.job_count());
  std::iota(order.begin(), order.end(), 0);
  insert_jobs(inst, sched, order);
  sched.instruments = allocate_instruments(inst, sched.routes);
  return sched;
}

InstrumentRepair repair_instruments(const ProblemInstance& inst, const Schedule& sched) {
  const auto problems = structural_problems(inst, sched);
  if (!problems.empty()) throw InputError("malformed schedule: " + problems.front());
  for (InstrumentIndex t = 0; t < inst.instrument_count(); ++t) {
    bool usable = false;
    for (OperatorIndex i = 0; i < inst.operator_count(); ++i) usable = usable || inst.can_use_instrument(i, t);
    if (!usable)
      throw InfeasibleError("instrument " + inst.instruments[t].id + ": no operator has skills " +
                            skill_names(inst, inst.instruments[t].required_skills));
  }

  InstrumentRepair out;
  out.schedule = sched;
  const auto jobs_on = job_holders(inst, sched);
  const auto requiring = requiring_jobs(inst);
  for (InstrumentIndex t = 0; t < inst.instrument_count(); ++t) {
    const auto holders = instrument_holders(inst, out.schedule)[t];
    std::vector<OperatorIndex> job_ops;
    for (JobIndex j : requiring[t])
      for (OperatorIndex i : jobs_on[j])
        if (std::find(job_ops.begin(), job_ops.end(), i) == job_ops.end()) job_ops.push_back(i);

    if (job_ops.size() > 1) {
      InstrumentConflict c;
      c.instrument = t;
      for (JobIndex j : requiring[t])
        if (!jobs_on[j].empty()) c.jobs.push_back(j);
      out.conflicts.push_back(std::move(c));
    }

    OperatorIndex target = kNoOperator;
    if (job_ops.size() == 1 && inst.can_use_instrument(job_ops[0], t)) {
      target = job_ops[0];
    } else {
      // Keep a single qualified holder; otherwise prefer a qualified holder,
      // then an operator of a requiring job, then the lowest qualified index.
      for (OperatorIndex i : holders)
        if (inst.can_use_instrument(i, t)) {
          target = i;
          break;
        }
      if (target == kNoOperator)
        for (OperatorIndex i : job_ops)
          if (inst.can_use_instrument(i, t)) {
            target = i;
            break;
          }
      for (OperatorIndex i = 0; target == kNoOperator && i < inst.operator_count(); ++i)
        if (inst.can_use_instrument(i, t)) target = i;
    }
    if (holders.size() == 1 && holders[0] == target) continue;

    MoveSuggestion mv;
    mv.kind = MoveKind::MoveInstrument;
    mv.instrument = t;
    mv.from_operator = holders.empty() ? kNoOperator : holders[0];
    mv.to_operator = target;
    for (auto& held : out.schedule.instruments) held.erase(t);
    out.schedule.instruments[target].insert(t);
    out.moves.push_back(mv);
  }
  return out;
}

std::size_t constraint_violations(const ProblemInstance& inst, const Schedule& sched) {
  std::size_t count = 0;
  for (OperatorIndex i = 0; i < sched.routes.size(); ++i)
    for (JobIndex j : sched.routes[i])
      if (!inst.has_job_skills(i, j)) ++count;
  for (OperatorIndex i = 0; i < sched.instruments.size(); ++i)
    for (InstrumentIndex t : sched.instruments[i])
      if (!inst.can_use_instrument(i, t)) ++count;
  const auto tools_on = instrument_holders(inst, sched);
  const auto jobs_on = job_holders(inst, sched);
  for (const auto& holders : tools_on) count += holders.empty() ? 1 : holders.size() - 1;
  for (JobIndex j = 0; j < inst.job_count(); ++j)
    for (InstrumentIndex t : inst.jobs[j].required_instruments) {
      bool violated = tools_on[t].empty();
      for (OperatorIndex h : tools_on[t])
        if (std::find(jobs_on[j].begin(), jobs_on[j].end(), h) == jobs_on[j].end()) violated = true;
      if (violated) ++count;
    }
  return count;
}

namespace {

struct SearchKey {
  std::size_t violations = 0;
  std::vector<double> costs;  // descending
  double distance = 0.0;
};

SearchKey key_of(const ProblemInstance& inst, const Schedule& sched) {
  SearchKey k;
  k.violations = constraint_violations(inst, sched);
  std::vector<double> costs(inst.operator_count());
  for (OperatorIndex i = 0; i < costs.size(); ++i) {
    costs[i] = operator_cost(inst, sched, i);
    k.distance += route_distance(inst, sched, i);
  }
  k.costs = sorted_costs(costs);
  return k;
}

int compare(const SearchKey& a, const SearchKey& b, double eps) {
  if (a.violations != b.violations) return a.violations < b.violations ? -1 : 1;
  if (int c = compare_sorted_costs(a.costs, b.costs, eps)) return c;
  if (a.distance < b.distance - eps) return -1;
  if (a.distance > b.distance + eps) return 1;
  return 0;
}

// Moves instruments next to the given jobs when all of an instrument's
// requiring jobs now sit on one operator that can use it.
std::vector<MoveSuggestion> drag_instruments(const ProblemInstance& inst, Schedule& sched,
                                             const std::vector<JobIndex>& moved) {
  std::vector<MoveSuggestion> out;
  const auto jobs_on = job_holders(inst, sched);
  const auto requiring = requiring_jobs(inst);
  std::set<InstrumentIndex> tools;
  for (JobIndex j : moved)
    tools.insert(inst.jobs[j].required_instruments.begin(), inst.jobs[j].required_instruments.end());
  for (InstrumentIndex t : tools) {
    std::set<OperatorIndex> ops;
    for (JobIndex j : requiring[t]) ops.insert(jobs_on[j].begin(), jobs_on[j].end());
    if (ops.size() != 1) continue;
    const OperatorIndex target = *ops.begin();
    if (!inst.can_use_instrument(target, t)) continue;
    const auto holders = instrument_holders(inst, sched)[t];
    if (holders.size() == 1 && holders[0] == target) continue;
    MoveSuggestion mv;
    mv.kind = MoveKind::MoveInstrument;
    mv.instrument = t;
    mv.from_operator = holders.empty() ? kNoOperator : holders[0];
    mv.to_operator = target;
    for (auto& held : sched.instruments) held.erase(t);
    sched.instruments[target].insert(t);
    out.push_back(mv);
  }
  return out;
}

std::vector<MoveSuggestion> candidate_moves(const ProblemInstance& inst, const Schedule& sched) {
  std::vector<MoveSuggestion> out;
  for (const auto& v : sep_plus_violations(inst, sched)) out.push_back(suggestion_for(v));
  for (const auto& v : pep_plus_violations(inst, sched)) out.push_back(suggestion_for(v));
  for (const auto& v : isep_violations(inst, sched)) out.push_back(suggestion_for(v));
  for (const auto& v : ipep_violations(inst, sched)) out.push_back(suggestion_for(v));

  // Relocations of jobs caught in a skill or job-instrument violation.
  const auto tool_holders = instrument_holders(inst, sched);
  auto misplaced = [&](OperatorIndex i, JobIndex j) {
    if (!inst.qualified_for(i, j)) return true;
    for (InstrumentIndex t : inst.jobs[j].required_instruments)
      if (tool_holders[t].size() != 1 || tool_holders[t][0] != i) return true;
    return false;
  };
  for (OperatorIndex i = 0; i < sched.routes.size(); ++i) {
    for (JobIndex j : sched.routes[i]) {
      if (!misplaced(i, j)) continue;
      for (OperatorIndex other = 0; other < sched.routes.size(); ++other) {
        if (other == i || !inst.qualified_for(other, j)) continue;
        for (std::size_t slot = 0; slot <= sched.routes[other].size(); ++slot) {
          MoveSuggestion mv;
          mv.kind = MoveKind::RelocateInter;
          mv.from_operator = i;
          mv.to_operator = other;
          mv.job = j;
          mv.position = slot;
          out.push_back(mv);
        }
      }
    }
  }

  for (InstrumentIndex t = 0; t < inst.instrument_count(); ++t) {
    const OperatorIndex from = tool_holders[t].empty() ? kNoOperator : tool_holders[t][0];
    for (OperatorIndex i = 0; i < inst.operator_count(); ++i) {
      if (i == from || !inst.can_use_instrument(i, t)) continue;
      MoveSuggestion mv;
      mv.kind = MoveKind::MoveInstrument;
      mv.instrument = t;
      mv.from_operator = from;
      mv.to_operator = i;
      out.push_back(mv);
    }
  }
  return out;
}

Schedule normalise_seed(const ProblemInstance& inst, Schedule seed) {
  const auto problems = structural_problems(inst, seed);
  if (!problems.empty()) throw InputError("malformed seed schedule: " + problems.front());
  std::vector<char> seen(inst.job_count(), 0);
  for (auto& route : seed.routes) {
    std::erase_if(route, [&](JobIndex j) { return seen[j]++ != 0; });
  }
  std::vector<JobIndex> missing;
  for (JobIndex j = 0; j < inst.job_count(); ++j)
    if (!seen[j]) missing.push_back(j);
  if (!missing.empty()) insert_jobs(inst, seed, missing);
  return seed;
}

}  // namespace

LocalSearchResult local_search(const ProblemInstance& inst, std::optional<Schedule> seed,
                               const SearchControl& control) {
  require_valid(inst);
  allowed_operators(inst);  // throws InfeasibleError with the blocking pairs
  const double eps = tolerance();

  LocalSearchResult out;
  out.schedule = seed ? normalise_seed(inst, std::move(*seed)) : greedy_seed(inst);
  SearchKey current = key_of(inst, out.schedule);

  constexpr std::size_t kMaxSteps = 100000;
  for (std::size_t step = 0; step < kMaxSteps; ++step) {
    const double makespan_before = current.costs.empty() ? 0.0 : current.costs.front();
    std::optional<Schedule> best_sched;
    std::optional<SearchKey> best_key;
    std::vector<MoveSuggestion> best_moves;

    for (const MoveSuggestion& mv : candidate_moves(inst, out.schedule)) {
      if (control.expired()) {
        out.cancelled = true;
        out.cost = cost_report(inst, out.schedule);
        return out;
      }
      Schedule next = apply_move(out.schedule, mv);
      std::vector<MoveSuggestion> moves{mv};
      if (mv.kind == MoveKind::RelocateInter || mv.kind == MoveKind::SwapInter) {
        std::vector<JobIndex> moved{mv.job};
        if (mv.other_job) moved.push_back(*mv.other_job);
        auto dragged = drag_instruments(inst, next, moved);
        moves.insert(moves.end(), dragged.begin(), dragged.end());
      }
      SearchKey key = key_of(inst, next);
      if (!best_key || compare(key, *best_key, eps) < 0) {
        best_key = std::move(key);
        best_sched = std::move(next);
        best_moves = std::move(moves);
      }
    }
    if (!best_key || compare(*best_key, current, eps) >= 0) break;

    const double makespan_after = best_key->costs.empty() ? 0.0 : best_key->costs.front();
    for (auto& mv : best_moves) {
      if (mv.kind != MoveKind::RelocateIntra && mv.kind != MoveKind::SwapIntra)
        mv.predicted_delta = makespan_before - makespan_after;
      out.trace.push_back(mv);
    }
    out.schedule = std::move(*best_sched);
    current = std::move(*best_key);
  }
  out.cost = cost_report(inst, out.schedule);
  return out;
}

}  // namespace argwf
