#include "argwf/cost.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace argwf {

namespace {

void check_route(const ProblemInstance& inst, std::span<const JobIndex> route) {
  for (JobIndex j : route)
    if (j >= inst.job_count())
      throw InputError("route references unknown job index " + std::to_string(j));
}

}  // namespace

double route_distance(const ProblemInstance& inst, std::span<const JobIndex> route) {
  check_route(inst, route);
  if (route.empty()) return 0.0;
  double total = distance(inst.depot, inst.jobs[route.front()].location);
  for (std::size_t k = 1; k < route.size(); ++k)
    total += distance(inst.jobs[route[k - 1]].location, inst.jobs[route[k]].location);
  total += distance(inst.jobs[route.back()].location, inst.depot);
  return total;
}

double route_distance(const ProblemInstance& inst, const Schedule& sched, OperatorIndex i) {
  if (i >= sched.routes.size()) throw InputError("unknown operator index " + std::to_string(i));
  return route_distance(inst, sched.routes[i]);
}

double route_cost(const ProblemInstance& inst, OperatorIndex i, std::span<const JobIndex> route) {
  if (i >= inst.operator_count()) throw InputError("unknown operator index " + std::to_string(i));
  double processing = 0.0;
  const double travel = route_distance(inst, route);
  for (JobIndex j : route) processing += inst.processing[i][j];
  return inst.alpha * processing + inst.beta * travel;
}

double operator_cost(const ProblemInstance& inst, const Schedule& sched, OperatorIndex i) {
  if (i >= sched.routes.size()) throw InputError("unknown operator index " + std::to_string(i));
  return route_cost(inst, i, sched.routes[i]);
}

CostReport cost_report_from(std::vector<double> per_operator) {
  CostReport report;
  report.per_operator = std::move(per_operator);
  if (report.per_operator.empty()) return report;
  report.makespan = *std::max_element(report.per_operator.begin(), report.per_operator.end());
  const double eps = tolerance();
  for (std::size_t i = 0; i < report.per_operator.size(); ++i)
    if (report.per_operator[i] >= report.makespan - eps) report.critical_operators.push_back(i);
  return report;
}

CostReport cost_report(const ProblemInstance& inst, const Schedule& sched) {
  std::vector<double> costs(inst.operator_count(), 0.0);
  for (std::size_t i = 0; i < costs.size(); ++i) costs[i] = operator_cost(inst, sched, i);
  return cost_report_from(std::move(costs));
}

std::vector<double> sorted_costs(std::span<const double> per_operator) {
  std::vector<double> out(per_operator.begin(), per_operator.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

int compare_sorted_costs(std::span<const double> a, std::span<const double> b, double eps) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] < b[k] - eps) return -1;
    if (a[k] > b[k] + eps) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace argwf
