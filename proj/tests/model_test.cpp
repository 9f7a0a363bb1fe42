#include <gtest/gtest.h>

#include "argwf/model.hpp"
#include "support/fixtures.hpp"

using namespace argwf;

namespace {

ProblemInstance two_by_two() {
  ProblemInstance inst;
  inst.skills = {"A"};
  inst.operators = {{"O1", {0}}, {"O2", {}}};
  inst.jobs = {{"J1", {1, 1}, {0}, {}}, {"J2", {2, 2}, {}, {}}};
  inst.processing = {{1, 2}, {3, 4}};
  return inst;
}

bool has_path(const std::vector<StructuralError>& errors, const std::string& path) {
  for (const auto& e : errors)
    if (e.path == path) return true;
  return false;
}

}  // namespace

TEST(ValidateInstance, AcceptsWellFormedInstance) { EXPECT_TRUE(validate_instance(two_by_two()).empty()); }

TEST(ValidateInstance, WeightsMustSumToOne) {
  auto inst = two_by_two();
  inst.alpha = 0.7;
  EXPECT_TRUE(has_path(validate_instance(inst), "$.alpha"));
}

TEST(ValidateInstance, NegativeWeightRejected) {
  auto inst = two_by_two();
  inst.alpha = -0.5;
  inst.beta = 1.5;
  EXPECT_TRUE(has_path(validate_instance(inst), "$.alpha"));
}

TEST(ValidateInstance, DuplicateIdsRejected) {
  auto inst = two_by_two();
  inst.jobs[1].id = "J1";
  EXPECT_TRUE(has_path(validate_instance(inst), "$.jobs[1].id"));
}

TEST(ValidateInstance, ProcessingDimensions) {
  auto inst = two_by_two();
  inst.processing[1].pop_back();
  EXPECT_TRUE(has_path(validate_instance(inst), "$.processing"));
  inst.processing.pop_back();
  EXPECT_TRUE(has_path(validate_instance(inst), "$.processing"));
}

TEST(ValidateInstance, NegativeProcessingRejected) {
  auto inst = two_by_two();
  inst.processing[0][1] = -1;
  EXPECT_TRUE(has_path(validate_instance(inst), "$.processing[0][1]"));
}

TEST(Qualification, SkillsAndInstruments) {
  auto inst = two_by_two();
  inst.skills.push_back("B");
  inst.instruments = {{"I0", {1}}};
  inst.jobs[1].required_instruments = {0};
  EXPECT_TRUE(inst.has_job_skills(0, 0));
  EXPECT_FALSE(inst.has_job_skills(1, 0));
  EXPECT_FALSE(inst.can_use_instrument(0, 0));
  EXPECT_TRUE(inst.has_job_skills(0, 1));
  EXPECT_FALSE(inst.qualified_for(0, 1));
  inst.operators[0].skills.insert(1);
  EXPECT_TRUE(inst.qualified_for(0, 1));
}

TEST(Schedule, EmptyScheduleShape) {
  const auto inst = two_by_two();
  const auto s = Schedule::empty_for(inst);
  EXPECT_EQ(s.routes.size(), 2u);
  EXPECT_EQ(s.instruments.size(), 2u);
  EXPECT_TRUE(structural_problems(inst, s).empty());
  EXPECT_FALSE(is_feasible(inst, s));
}

TEST(Schedule, StructuralProblems) {
  const auto inst = two_by_two();
  Schedule s = Schedule::empty_for(inst);
  s.routes[0] = {0, 0};
  EXPECT_EQ(structural_problems(inst, s).size(), 1u);
  s.routes[0] = {5};
  EXPECT_EQ(structural_problems(inst, s).size(), 1u);
  s.routes.pop_back();
  EXPECT_GE(structural_problems(inst, s).size(), 2u);
}

TEST(Schedule, FeasibilityMeansEachJobOnce) {
  const auto inst = two_by_two();
  Schedule s = Schedule::empty_for(inst);
  s.routes = {{0}, {1}};
  EXPECT_TRUE(is_feasible(inst, s));
  s.routes = {{0, 1}, {1}};
  EXPECT_FALSE(is_feasible(inst, s));
  const auto holders = job_holders(inst, s);
  EXPECT_EQ(holders[1], (std::vector<OperatorIndex>{0, 1}));
}

TEST(Schedule, SequencingHelpers) {
  Schedule s;
  s.routes = {{2, 0, 1}, {3}, {}};
  EXPECT_EQ(consecutive_pairs(s, 0), (std::vector<std::pair<JobIndex, JobIndex>>{{2, 0}, {0, 1}}));
  EXPECT_TRUE(consecutive_pairs(s, 1).empty());
  EXPECT_EQ(last_jobs(s), (std::set<JobIndex>{1, 3}));
}

TEST(Schedule, InstrumentHolders) {
  auto inst = two_by_two();
  inst.instruments = {{"I0", {}}, {"I1", {}}};
  Schedule s = Schedule::empty_for(inst);
  s.instruments = {{0, 1}, {1}};
  const auto holders = instrument_holders(inst, s);
  EXPECT_EQ(holders[0], (std::vector<OperatorIndex>{0}));
  EXPECT_EQ(holders[1], (std::vector<OperatorIndex>{0, 1}));
}

TEST(Tolerance, OverrideIsVisible) {
  const double before = tolerance();
  set_tolerance(1e-6);
  EXPECT_DOUBLE_EQ(tolerance(), 1e-6);
  set_tolerance(before);
}

TEST(Lookup, FindsById) {
  const auto inst = fixtures::problem("example7");
  EXPECT_EQ(inst.find_operator("O2"), 1u);
  EXPECT_EQ(inst.find_job("J4"), 3u);
  EXPECT_EQ(inst.find_instrument("I2"), 2u);
  EXPECT_EQ(inst.find_skill("Z"), 2u);
  EXPECT_FALSE(inst.find_job("J9").has_value());
}
