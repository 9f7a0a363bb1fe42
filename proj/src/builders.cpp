#include "argwf/builders.hpp"

#include <algorithm>
#include <string>

namespace argwf {

const char* to_string(ExchangeKind kind) {
  switch (kind) {
    case ExchangeKind::SepPlus: return "SEP+";
    case ExchangeKind::PepPlus: return "PEP+";
    case ExchangeKind::Isep: return "ISEP";
    case ExchangeKind::Ipep: return "IPEP";
  }
  return "?";
}

std::vector<Argument> schedule_extension(const Schedule& sched) {
  std::set<Argument> out;
  for (std::size_t i = 0; i < sched.routes.size(); ++i)
    for (JobIndex j : sched.routes[i]) out.insert(Argument::operator_job(i, j));
  return {out.begin(), out.end()};
}

std::vector<Argument> instrument_extension(const Schedule& sched) {
  std::vector<Argument> out;
  for (std::size_t i = 0; i < sched.instruments.size(); ++i)
    for (InstrumentIndex t : sched.instruments[i]) out.push_back(Argument::operator_instrument(i, t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Argument> requirement_extension(const ProblemInstance& inst) {
  std::vector<Argument> out;
  for (std::size_t j = 0; j < inst.job_count(); ++j)
    for (InstrumentIndex t : inst.jobs[j].required_instruments)
      out.push_back(Argument::job_instrument(j, t));
  std::sort(out.begin(), out.end());
  return out;
}

ArgGraph feasibility_af(const ProblemInstance& inst) {
  ArgGraph g;
  const std::size_t m = inst.operator_count();
  const std::size_t n = inst.job_count();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g.add_argument(Argument::operator_job(i, j));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (i != k) g.add_attack(Argument::operator_job(i, j), Argument::operator_job(k, j));
  return g;
}

ArgGraph fixed_decision_af(const ProblemInstance& inst, const FixedDecisions& fd) {
  for (const auto& d : fd.negative)
    if (fd.positive.count(d))
      throw InputError("fixed decision (" + std::to_string(d.first) + "," + std::to_string(d.second) +
                       ") is both negative and positive");
  auto check = [&](const std::pair<OperatorIndex, JobIndex>& d) {
    if (d.first >= inst.operator_count() || d.second >= inst.job_count())
      throw InputError("fixed decision references an unknown operator or job");
  };
  ArgGraph g = feasibility_af(inst);
  for (const auto& d : fd.negative) {
    check(d);
    const auto a = Argument::operator_job(d.first, d.second);
    g.add_attack(a, a);
  }
  for (const auto& d : fd.positive) {
    check(d);
    g.remove_attacks_onto(Argument::operator_job(d.first, d.second));
  }
  return g;
}

FixedDecisions skill_fixed_decisions(const ProblemInstance& inst) {
  FixedDecisions fd;
  for (std::size_t i = 0; i < inst.operator_count(); ++i)
    for (std::size_t j = 0; j < inst.job_count(); ++j)
      if (!inst.has_job_skills(i, j)) fd.negative.emplace(i, j);
  return fd;
}

ArgGraph skill_af(const ProblemInstance& inst) {
  return fixed_decision_af(inst, skill_fixed_decisions(inst));
}

namespace {

void require_feasible(const ProblemInstance& inst, const Schedule& sched) {
  if (!is_feasible(inst, sched))
    throw InputError(
        "schedule is not feasible (every job must be in exactly one route); "
        "consult the feasibility explanations first");
}

void require_sound(const ProblemInstance& inst, const Schedule& sched) {
  auto problems = structural_problems(inst, sched);
  if (!problems.empty()) throw InputError("malformed schedule: " + problems.front());
}

struct Neighbours {
  std::size_t pred = kDepot;
  std::size_t succ = kDepot;
};

Neighbours neighbours_at(const std::vector<JobIndex>& route, std::size_t k) {
  return {k > 0 ? route[k - 1] : kDepot, k + 1 < route.size() ? route[k + 1] : kDepot};
}

// Neighbours of the gap before index `slot` (slot == size means after the last job).
Neighbours gap_at(const std::vector<JobIndex>& route, std::size_t slot) {
  return {slot > 0 ? route[slot - 1] : kDepot, slot < route.size() ? route[slot] : kDepot};
}

struct ScanContext {
  const ProblemInstance& inst;
  const Schedule& sched;
  CostReport costs;
  double eps;

  ScanContext(const ProblemInstance& in, const Schedule& s)
      : inst(in), sched(s), costs(cost_report(in, s)), eps(tolerance()) {}

  double d(std::size_t a, std::size_t b) const { return stop_distance(inst, a, b); }

  double makespan_after(OperatorIndex a, double cost_a, OperatorIndex b, double cost_b) const {
    double best = std::max(cost_a, cost_b);
    for (std::size_t k = 0; k < costs.per_operator.size(); ++k)
      if (k != a && k != b) best = std::max(best, costs.per_operator[k]);
    return best;
  }

  // SEP+ candidates for the job at position k of critical operator i.
  void sep_item(OperatorIndex i, std::size_t k, std::vector<ExchangeViolation>& out) const {
    const auto& route = sched.routes[i];
    const JobIndex j = route[k];
    const auto [jm, jp] = neighbours_at(route, k);
    const double c_i = costs.per_operator[i];
    const double removal = d(jm, j) + d(j, jp) - d(jm, jp);
    const double c_i_after = c_i - inst.alpha * inst.processing[i][j] - inst.beta * removal;
    for (OperatorIndex other = 0; other < inst.operator_count(); ++other) {
      if (other == i) continue;
      const auto& target = sched.routes[other];
      const double c_other = costs.per_operator[other];
      const double lhs = c_i - c_other;
      for (std::size_t slot = 0; slot <= target.size(); ++slot) {
        const auto [pred, succ] = gap_at(target, slot);
        const double rhs = inst.alpha * inst.processing[other][j] +
                           inst.beta * (d(pred, j) + d(j, succ) - d(pred, succ));
        if (!(lhs > rhs + eps)) continue;
        ExchangeViolation v;
        v.kind = ExchangeKind::SepPlus;
        v.source_operator = i;
        v.job = j;
        v.source_position = k;
        v.target_operator = other;
        v.target_position = slot;
        v.lhs = lhs;
        v.rhs = rhs;
        v.delta = costs.makespan - makespan_after(i, c_i_after, other, c_other + rhs);
        out.push_back(v);
      }
    }
  }

  // PEP+ candidates pairing the job at position k of critical operator i
  // with every job of every other operator.
  void pep_item(OperatorIndex i, std::size_t k, std::vector<ExchangeViolation>& out) const {
    const auto& route = sched.routes[i];
    const JobIndex j = route[k];
    const auto [jm, jp] = neighbours_at(route, k);
    const double c_i = costs.per_operator[i];
    for (OperatorIndex other = 0; other < inst.operator_count(); ++other) {
      if (other == i) continue;
      const auto& target = sched.routes[other];
      const double c_other = costs.per_operator[other];
      const double lhs = c_i - c_other;
      for (std::size_t k2 = 0; k2 < target.size(); ++k2) {
        const JobIndex j2 = target[k2];
        if (j2 == j) continue;
        const auto [jm2, jp2] = neighbours_at(target, k2);
        const double premise_lhs =
            inst.beta * ((d(jm, j) + d(j, jp)) - (d(jm, j2) + d(j2, jp)));
        const double premise_rhs = inst.alpha * (inst.processing[i][j2] - inst.processing[i][j]);
        if (!(premise_lhs > premise_rhs + eps)) continue;
        const double rhs = inst.alpha * (inst.processing[other][j] - inst.processing[other][j2]) +
                           inst.beta * ((d(jm2, j) + d(j, jp2)) - (d(jm2, j2) + d(j2, jp2)));
        if (!(lhs > rhs + eps)) continue;
        ExchangeViolation v;
        v.kind = ExchangeKind::PepPlus;
        v.source_operator = i;
        v.job = j;
        v.source_position = k;
        v.target_operator = other;
        v.target_position = k2;
        v.other_job = j2;
        v.lhs = lhs;
        v.rhs = rhs;
        v.premise_lhs = premise_lhs;
        v.premise_rhs = premise_rhs;
        v.delta = costs.makespan -
                  makespan_after(i, c_i + premise_rhs - premise_lhs, other, c_other + rhs);
        out.push_back(v);
      }
    }
  }

  std::vector<std::pair<OperatorIndex, std::size_t>> critical_items() const {
    std::vector<std::pair<OperatorIndex, std::size_t>> items;
    for (OperatorIndex i : costs.critical_operators)
      for (std::size_t k = 0; k < sched.routes[i].size(); ++k) items.emplace_back(i, k);
    return items;
  }
};

template <typename Item>
std::vector<ExchangeViolation> parallel_scan(const ScanContext& ctx, Item item) {
  const auto items = ctx.critical_items();
  std::vector<std::vector<ExchangeViolation>> buckets(items.size());
  const long count = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic)
  for (long w = 0; w < count; ++w) {
    const auto [i, k] = items[static_cast<std::size_t>(w)];
    (ctx.*item)(i, k, buckets[static_cast<std::size_t>(w)]);
  }
  std::vector<ExchangeViolation> out;
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::vector<ExchangeViolation> sep_plus_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  const ScanContext ctx(inst, sched);
  return parallel_scan(ctx, &ScanContext::sep_item);
}

std::vector<ExchangeViolation> pep_plus_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  const ScanContext ctx(inst, sched);
  return parallel_scan(ctx, &ScanContext::pep_item);
}

namespace reference {

std::vector<ExchangeViolation> sep_plus_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  const ScanContext ctx(inst, sched);
  std::vector<ExchangeViolation> out;
  for (OperatorIndex i : ctx.costs.critical_operators)
    for (std::size_t k = 0; k < sched.routes[i].size(); ++k) ctx.sep_item(i, k, out);
  return out;
}

std::vector<ExchangeViolation> pep_plus_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  const ScanContext ctx(inst, sched);
  std::vector<ExchangeViolation> out;
  for (OperatorIndex i : ctx.costs.critical_operators)
    for (std::size_t k = 0; k < sched.routes[i].size(); ++k) ctx.pep_item(i, k, out);
  return out;
}

}  // namespace reference

std::vector<ExchangeViolation> isep_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_sound(inst, sched);
  const double eps = tolerance();
  std::vector<ExchangeViolation> out;
  for (OperatorIndex i = 0; i < sched.routes.size(); ++i) {
    const auto& route = sched.routes[i];
    if (route.size() < 2) continue;
    const double before = route_distance(inst, route);
    std::vector<JobIndex> candidate;
    for (std::size_t k = 0; k < route.size(); ++k) {
      std::vector<JobIndex> reduced = route;
      reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(k));
      for (std::size_t slot = 0; slot <= reduced.size(); ++slot) {
        if (slot == k) continue;
        candidate = reduced;
        candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(slot), route[k]);
        const double after = route_distance(inst, candidate);
        if (!(before > after + eps)) continue;
        ExchangeViolation v;
        v.kind = ExchangeKind::Isep;
        v.source_operator = i;
        v.job = route[k];
        v.source_position = k;
        v.target_operator = i;
        v.target_position = slot;
        v.lhs = before;
        v.rhs = after;
        v.delta = before - after;
        out.push_back(v);
      }
    }
  }
  return out;
}

std::vector<ExchangeViolation> ipep_violations(const ProblemInstance& inst, const Schedule& sched) {
  require_sound(inst, sched);
  const double eps = tolerance();
  std::vector<ExchangeViolation> out;
  for (OperatorIndex i = 0; i < sched.routes.size(); ++i) {
    const auto& route = sched.routes[i];
    const double before = route_distance(inst, route);
    for (std::size_t k = 0; k < route.size(); ++k) {
      for (std::size_t k2 = k + 1; k2 < route.size(); ++k2) {
        std::vector<JobIndex> candidate = route;
        std::swap(candidate[k], candidate[k2]);
        const double after = route_distance(inst, candidate);
        if (!(before > after + eps)) continue;
        ExchangeViolation v;
        v.kind = ExchangeKind::Ipep;
        v.source_operator = i;
        v.job = route[k];
        v.source_position = k;
        v.target_operator = i;
        v.target_position = k2;
        v.other_job = route[k2];
        v.lhs = before;
        v.rhs = after;
        v.delta = before - after;
        out.push_back(v);
      }
    }
  }
  return out;
}

ArgGraph extended_cost_af(const ProblemInstance& inst, const std::vector<ExchangeViolation>& sep,
                          const std::vector<ExchangeViolation>& pep) {
  ArgGraph g = feasibility_af(inst);
  for (const auto& v : sep)
    g.remove_attack(Argument::operator_job(v.source_operator, v.job),
                    Argument::operator_job(v.target_operator, v.job));
  for (const auto& v : pep)
    g.add_attack(Argument::operator_job(v.target_operator, *v.other_job),
                 Argument::operator_job(v.source_operator, v.job));
  return g;
}

ArgGraph extended_cost_af(const ProblemInstance& inst, const Schedule& sched) {
  if (!is_feasible(inst, sched)) return feasibility_af(inst);
  return extended_cost_af(inst, sep_plus_violations(inst, sched), pep_plus_violations(inst, sched));
}

ArgGraph individual_af(const ProblemInstance& inst, const std::vector<ExchangeViolation>& isep,
                       const std::vector<ExchangeViolation>& ipep) {
  ArgGraph g = feasibility_af(inst);
  for (const auto& v : isep) {
    const auto a = Argument::operator_job(v.source_operator, v.job);
    g.add_attack(a, a);
  }
  for (const auto& v : ipep) {
    const auto a = Argument::operator_job(v.source_operator, v.job);
    const auto b = Argument::operator_job(v.source_operator, *v.other_job);
    g.add_attack(b, a);
    g.add_attack(a, b);
  }
  return g;
}

ArgGraph individual_af(const ProblemInstance& inst, const Schedule& sched) {
  if (!structural_problems(inst, sched).empty()) return feasibility_af(inst);
  return individual_af(inst, isep_violations(inst, sched), ipep_violations(inst, sched));
}

ArgGraph instrument_feasibility_af(const ProblemInstance& inst) {
  ArgGraph g;
  const std::size_t m = inst.operator_count();
  const std::size_t t_count = inst.instrument_count();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < t_count; ++t) g.add_argument(Argument::operator_instrument(i, t));
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = Argument::operator_instrument(i, t);
      for (std::size_t k = 0; k < m; ++k)
        if (i != k) g.add_attack(a, Argument::operator_instrument(k, t));
      if (!inst.can_use_instrument(i, t)) g.add_attack(a, a);
    }
  }
  return g;
}

ArgGraph job_instrument_af(const ProblemInstance& inst, const Schedule& sched) {
  ArgGraph g;
  const auto jobs_on = job_holders(inst, sched);
  const auto tools_on = instrument_holders(inst, sched);
  for (std::size_t j = 0; j < inst.job_count(); ++j) {
    for (std::size_t t = 0; t < inst.instrument_count(); ++t) {
      const auto a = Argument::job_instrument(j, t);
      g.add_argument(a);
      bool violated = tools_on[t].empty();
      for (OperatorIndex holder : tools_on[t])
        if (std::find(jobs_on[j].begin(), jobs_on[j].end(), holder) == jobs_on[j].end())
          violated = true;
      if (violated) g.add_attack(a, a);
    }
  }
  return g;
}

AfBundle build_all(const ProblemInstance& inst, const Schedule& sched) {
  require_sound(inst, sched);
  AfBundle b;
  b.feasibility = feasibility_af(inst);
  if (is_feasible(inst, sched)) {
    b.sep = sep_plus_violations(inst, sched);
    b.pep = pep_plus_violations(inst, sched);
    b.extended_cost = extended_cost_af(inst, b.sep, b.pep);
  } else {
    b.extended_cost = b.feasibility;
  }
  b.isep = isep_violations(inst, sched);
  b.ipep = ipep_violations(inst, sched);
  b.individual = individual_af(inst, b.isep, b.ipep);
  b.skills = skill_af(inst);
  b.instruments = instrument_feasibility_af(inst);
  b.job_instrument = job_instrument_af(inst, sched);
  return b;
}

}  // namespace argwf
