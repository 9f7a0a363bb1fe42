#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "argwf/explain.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace argwf;

namespace {

std::vector<ExplanationCode> codes(const std::vector<Explanation>& all) {
  std::vector<ExplanationCode> out;
  for (const auto& e : all) out.push_back(e.code);
  return out;
}

const double kC1 = 0.5 * 150 + 0.5 * (5 + std::sqrt(68.0) + 13);

}  // namespace

TEST(Explain, TwoOperatorExample) {
  const auto inst = fixtures::problem("example2");
  const auto s = fixtures::schedule(inst, "example2_schedule.json");
  const auto all = explain(inst, s);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(codes(all), (std::vector<ExplanationCode>{ExplanationCode::NotExtendedEfficient,
                                                      ExplanationCode::NotExtendedEfficient}));

  const auto& relocate = all[0];
  ASSERT_TRUE(relocate.suggestion);
  EXPECT_EQ(relocate.suggestion->kind, MoveKind::RelocateInter);
  EXPECT_EQ(relocate.suggestion->job, 2u);
  EXPECT_EQ(relocate.suggestion->to_operator, 1u);
  EXPECT_EQ(relocate.suggestion->position, 0u);
  EXPECT_NEAR(*relocate.delta, kC1 - 73.0, 1e-9);
  EXPECT_FALSE(relocate.witness->attack);
  EXPECT_EQ(relocate.witness->target, Argument::operator_job(1, 2));
  EXPECT_EQ(relocate.message,
            "Moving job J3 from operator O1 to operator O2 (position 1) reduces the maximum cost by 15.12.");

  const auto& swap = all[1];
  ASSERT_TRUE(swap.suggestion);
  EXPECT_EQ(swap.suggestion->kind, MoveKind::SwapInter);
  EXPECT_NEAR(*swap.delta, kC1 - 65.0, 1e-9);
  EXPECT_EQ(swap.witness->attacker, Argument::operator_job(1, 1));
  EXPECT_EQ(swap.witness->target, Argument::operator_job(0, 0));
}

TEST(Explain, ApplyingRelocationClearsEfficiencyFindings) {
  const auto inst = fixtures::problem("example2");
  const auto s = fixtures::schedule(inst, "example2_schedule.json");
  const auto next = apply_move(s, *explain(inst, s)[0].suggestion);
  EXPECT_EQ(next.routes, (std::vector<std::vector<JobIndex>>{{0}, {2, 1}}));
  EXPECT_NEAR(cost_report(inst, next).makespan, 73.0, 1e-9);
  for (const auto& e : explain(inst, next)) EXPECT_FALSE(is_efficiency_code(e.code)) << e.message;
}

TEST(Explain, FeasibilityFindings) {
  const auto inst = fixtures::problem("example2");
  Schedule s = Schedule::empty_for(inst);
  s.routes = {{0, 2}, {2}};
  const auto all = explain(inst, s);
  EXPECT_EQ(codes(all), (std::vector<ExplanationCode>{ExplanationCode::NotFeasibleUnassigned,
                                                      ExplanationCode::NotFeasibleMulti}));
  EXPECT_EQ(all[0].message, "Job J2 is not assigned to any operator.");
  EXPECT_FALSE(all[0].witness->attack);
  EXPECT_EQ(all[1].message, "Job J3 is assigned to operator O1 and operator O2.");
}

TEST(Explain, SkillViolationMessage) {
  const auto inst = fixtures::problem("example5");
  const auto s = fixtures::schedule(inst, "example5_schedule.json");
  std::vector<Explanation> skills;
  for (auto& e : explain(inst, s)) {
    if (e.code == ExplanationCode::SkillViolation) skills.push_back(e);
  }
  ASSERT_EQ(skills.size(), 1u);
  EXPECT_EQ(skills[0].message, "Operator O2 lacks skill B required by job J2.");
  EXPECT_EQ(skills[0].witness->af, AfKind::Skills);
}

TEST(Explain, InstrumentFindings) {
  const auto inst = fixtures::problem("example6");
  EXPECT_TRUE(explain(inst, fixtures::schedule(inst, "example6_schedule_si.json")).empty());

  const auto bad = explain(inst, fixtures::schedule(inst, "example6_schedule_si_prime.json"));
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].code, ExplanationCode::InstrumentSkillViolation);
  EXPECT_EQ(bad[0].witness->target, Argument::operator_instrument(1, 1));
  EXPECT_EQ(bad[0].message, "Operator O2 lacks skill X required by instrument I1.");

  Schedule s = Schedule::empty_for(inst);
  s.instruments = {{0, 1, 2}, {2}};
  const auto all = explain(inst, s);
  EXPECT_EQ(codes(all), (std::vector<ExplanationCode>{ExplanationCode::InstrumentFeasibility,
                                                      ExplanationCode::InstrumentFeasibility}));
  EXPECT_EQ(all[0].message, "Instrument I3 is not allocated to any operator.");
  EXPECT_EQ(all[1].message, "Instrument I2 is allocated to operator O1 and operator O2.");
}

TEST(Explain, JobInstrumentViolation) {
  const auto inst = fixtures::problem("example7");
  const auto s = fixtures::schedule(inst, "example7_schedule.json");
  std::vector<Explanation> found;
  for (auto& e : explain(inst, s))
    if (e.code == ExplanationCode::JobInstrumentViolation) found.push_back(e);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].witness->target, Argument::job_instrument(0, 2));
  EXPECT_EQ(found[0].message,
            "Job J1 requires instrument I2, which is allocated to operator O2, but the job is assigned to operator O1.");
}

TEST(Explain, IndividualFindingsOnePerPair) {
  const auto inst = fixtures::problem("example4");
  const auto s = fixtures::schedule(inst, "example4_schedule.json");
  std::size_t relocations = 0;
  std::size_t swaps = 0;
  for (const auto& e : explain(inst, s)) {
    ASSERT_EQ(e.code, ExplanationCode::NotIndividuallyEfficient);
    ASSERT_TRUE(e.suggestion);
    if (e.suggestion->kind == MoveKind::RelocateIntra) ++relocations;
    if (e.suggestion->kind == MoveKind::SwapIntra) ++swaps;
  }
  EXPECT_EQ(relocations, 3u);
  EXPECT_EQ(swaps, 2u);
}

TEST(Explain, MalformedSchedule) {
  const auto inst = fixtures::problem("example2");
  Schedule s = Schedule::empty_for(inst);
  s.routes = {{0, 0}, {1, 2}};
  const auto all = explain(inst, s);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].code, ExplanationCode::MalformedSchedule);
  EXPECT_FALSE(all[0].witness);
}

TEST(Explain, OrderedByCodeThenWitness) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 100; ++round) {
    const auto inst = oracle::random_instance(rng, {3, 5, 15, 1, 120, 3, 2});
    Schedule s = oracle::random_schedule(rng, inst);
    if (round % 3 == 0) s.routes[0].clear();
    const auto all = explain(inst, s);
    for (std::size_t k = 1; k < all.size(); ++k) {
      ASSERT_LE(all[k - 1].code, all[k].code);
      if (all[k - 1].code == all[k].code) {
        ASSERT_LE(*all[k - 1].witness, *all[k].witness);
      }
    }
  }
}

TEST(Explain, EmptyExactlyForGoodSchedules) {
  std::mt19937_64 rng(23);
  const double eps = tolerance();
  int empty = 0;
  for (int round = 0; round < 60; ++round) {
    const auto inst = oracle::random_instance(rng, {2, 3});
    for (const auto& routes : oracle::all_schedules(2, 3)) {
      const auto s = oracle::to_schedule(inst, routes);
      const bool good = !oracle::violates_sep_plus(inst, routes, eps) &&
                        !oracle::violates_pep_plus(inst, routes, eps) &&
                        !oracle::violates_isep(inst, routes, eps) && !oracle::violates_ipep(inst, routes, eps);
      const bool quiet = explain(inst, s).empty();
      ASSERT_EQ(quiet, good);
      empty += quiet;
    }
  }
  EXPECT_GT(empty, 0);
}

TEST(ApplyMove, StaleMovesConflict) {
  const auto inst = fixtures::problem("example2");
  const auto s = fixtures::schedule(inst, "example2_schedule.json");
  MoveSuggestion mv;
  mv.kind = MoveKind::RelocateInter;
  mv.from_operator = 1;
  mv.to_operator = 0;
  mv.job = 0;
  EXPECT_THROW(apply_move(s, mv), ConflictError);
  mv.kind = MoveKind::SwapIntra;
  mv.from_operator = 0;
  mv.job = 0;
  mv.other_job = 1;
  EXPECT_THROW(apply_move(s, mv), ConflictError);
  mv.kind = MoveKind::MoveInstrument;
  mv.instrument = 0;
  EXPECT_THROW(apply_move(s, mv), ConflictError);
}

TEST(ApplyMove, AllKinds) {
  Schedule s;
  s.routes = {{0, 1, 2}, {3}};
  s.instruments = {{0}, {}};
  MoveSuggestion mv;
  mv.kind = MoveKind::SwapInter;
  mv.from_operator = 0;
  mv.to_operator = 1;
  mv.job = 1;
  mv.other_job = 3;
  EXPECT_EQ(apply_move(s, mv).routes, (std::vector<std::vector<JobIndex>>{{0, 3, 2}, {1}}));
  mv = {};
  mv.kind = MoveKind::RelocateIntra;
  mv.from_operator = 0;
  mv.job = 0;
  mv.position = 2;
  EXPECT_EQ(apply_move(s, mv).routes[0], (std::vector<JobIndex>{1, 2, 0}));
  mv = {};
  mv.kind = MoveKind::SwapIntra;
  mv.from_operator = 0;
  mv.job = 0;
  mv.other_job = 2;
  EXPECT_EQ(apply_move(s, mv).routes[0], (std::vector<JobIndex>{2, 1, 0}));
  mv = {};
  mv.kind = MoveKind::MoveInstrument;
  mv.instrument = 0;
  mv.from_operator = 0;
  mv.to_operator = 1;
  EXPECT_EQ(apply_move(s, mv).instruments, (std::vector<std::set<InstrumentIndex>>{{}, {0}}));
}

TEST(Cap, KeepsFirstFiftyAndCountsTheRest) {
  std::vector<Explanation> all(57);
  const auto capped = cap_explanations(all);
  EXPECT_EQ(capped.items.size(), kExplanationCap);
  EXPECT_EQ(capped.suppressed, 7u);
  EXPECT_EQ(cap_explanations(std::vector<Explanation>(3)).suppressed, 0u);
}

TEST(Names, RoundTrip) {
  for (AfKind k : {AfKind::Feasibility, AfKind::ExtendedCost, AfKind::Individual, AfKind::Skills,
                   AfKind::Instruments, AfKind::JobInstrument})
    EXPECT_EQ(af_kind_from_string(to_string(k)), k);
  for (MoveKind k : {MoveKind::RelocateInter, MoveKind::SwapInter, MoveKind::RelocateIntra, MoveKind::SwapIntra,
                     MoveKind::MoveInstrument})
    EXPECT_EQ(move_kind_from_string(to_string(k)), k);
  EXPECT_FALSE(af_kind_from_string("nope"));
}
