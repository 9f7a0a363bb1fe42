#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "argwf/model.hpp"

// Reference computations written directly from the model definitions, kept
// apart from the engine so tests compare two independent derivations.
namespace oracle {

using Routes = std::vector<std::vector<std::size_t>>;

double cost(const argwf::ProblemInstance& inst, std::size_t i, const std::vector<std::size_t>& route);
std::vector<double> costs(const argwf::ProblemInstance& inst, const Routes& routes);
double makespan(const argwf::ProblemInstance& inst, const Routes& routes);
double travel(const argwf::ProblemInstance& inst, const std::vector<std::size_t>& route);

/// Every way to place each job exactly once, in every order.
std::vector<Routes> all_schedules(std::size_t operators, std::size_t jobs);

/// Skill and instrument co-location constraints of an assignment.
bool respects_constraints(const argwf::ProblemInstance& inst, const Routes& routes);

/// Minimum makespan over all_schedules that respect the constraints.
double optimal_makespan(const argwf::ProblemInstance& inst);

/// True iff some critical job can be relocated/swapped as the exchange
/// inequalities describe (evaluated from the raw formulas).
bool violates_sep_plus(const argwf::ProblemInstance& inst, const Routes& routes, double eps);
bool violates_pep_plus(const argwf::ProblemInstance& inst, const Routes& routes, double eps);
/// True iff an intra-route relocation / swap shortens some route by more than eps.
bool violates_isep(const argwf::ProblemInstance& inst, const Routes& routes, double eps);
bool violates_ipep(const argwf::ProblemInstance& inst, const Routes& routes, double eps);

struct RandomSpec {
  std::size_t operators = 2;
  std::size_t jobs = 3;
  int max_coord = 15;
  int min_processing = 1;
  int max_processing = 120;
  std::size_t skills = 0;         // skill pool size; 0 disables skills
  std::size_t instruments = 0;
  bool random_weights = false;    // alpha drawn from {0.1, ..., 0.9}
};

argwf::ProblemInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec);

/// A uniformly drawn complete schedule (every job once), routes only.
argwf::Schedule random_schedule(std::mt19937_64& rng, const argwf::ProblemInstance& inst);

argwf::Schedule to_schedule(const argwf::ProblemInstance& inst, const Routes& routes);

}  // namespace oracle
