#pragma once

#include <span>
#include <vector>

#include "argwf/model.hpp"

namespace argwf {

struct CostReport {
  std::vector<double> per_operator;               // C_i, indexed by operator
  double makespan = 0.0;                          // C_max
  std::vector<OperatorIndex> critical_operators;  // C_i within tolerance of C_max
};

/// Travel of one ordered route: depot -> first -> ... -> last -> depot.
double route_distance(const ProblemInstance& inst, std::span<const JobIndex> route);
double route_distance(const ProblemInstance& inst, const Schedule& sched, OperatorIndex i);

/// alpha * processing + beta * travel for operator i's route.
double operator_cost(const ProblemInstance& inst, const Schedule& sched, OperatorIndex i);
double route_cost(const ProblemInstance& inst, OperatorIndex i, std::span<const JobIndex> route);

CostReport cost_report(const ProblemInstance& inst, const Schedule& sched);
CostReport cost_report_from(std::vector<double> per_operator);

/// Descending-sorted cost vector. Compared lexicographically it refines the
/// makespan: equal makespans are ordered by the next-largest cost, and so on.
std::vector<double> sorted_costs(std::span<const double> per_operator);

/// -1 / 0 / +1 comparison of two descending cost vectors with tolerance.
int compare_sorted_costs(std::span<const double> a, std::span<const double> b, double eps);

}  // namespace argwf
