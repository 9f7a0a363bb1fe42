#include <gtest/gtest.h>

#include "argwf/af.hpp"
#include "argwf/model.hpp"

using namespace argwf;

namespace {

const Argument a = Argument::operator_job(0, 0);
const Argument b = Argument::operator_job(1, 0);
const Argument c = Argument::operator_job(0, 1);

ArgGraph chain() {
  ArgGraph g;
  for (const auto& x : {a, b, c}) g.add_argument(x);
  g.add_attack(a, b);
  g.add_attack(b, a);
  return g;
}

}  // namespace

TEST(ArgGraph, AttackEndpointsMustExist) {
  ArgGraph g;
  g.add_argument(a);
  EXPECT_THROW(g.add_attack(a, b), InputError);
}

TEST(ArgGraph, AddAndRemove) {
  auto g = chain();
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.attack_count(), 2u);
  g.remove_attack(a, b);
  EXPECT_FALSE(g.attacks(a, b));
  EXPECT_TRUE(g.attacks(b, a));
  g.add_attack(c, a);
  g.remove_attacks_onto(a);
  EXPECT_EQ(g.attack_count(), 0u);
}

TEST(Semantics, ConflictFreeWitness) {
  auto g = chain();
  const std::vector<Argument> both{a, b};
  const auto r = is_conflict_free(g, both);
  EXPECT_FALSE(r.conflict_free);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, Attack(a, b));
  const std::vector<Argument> single{a, c};
  EXPECT_TRUE(is_conflict_free(g, single).conflict_free);
}

TEST(Semantics, StableNeedsToAttackEverythingOutside) {
  auto g = chain();
  const std::vector<Argument> e{a};
  const auto r = is_stable(g, e);
  EXPECT_FALSE(r.stable);
  ASSERT_TRUE(r.unattacked);
  EXPECT_EQ(*r.unattacked, c);
  const std::vector<Argument> e2{a, c};
  EXPECT_TRUE(is_stable(g, e2).stable);
}

TEST(Semantics, SelfAttackBreaksConflictFreeness) {
  auto g = chain();
  g.add_attack(c, c);
  const std::vector<Argument> e{a, c};
  const auto r = is_stable(g, e);
  EXPECT_FALSE(r.stable);
  ASSERT_TRUE(r.conflict);
  EXPECT_EQ(*r.conflict, Attack(c, c));
}

TEST(Semantics, UnknownExtensionMemberThrows) {
  auto g = chain();
  const std::vector<Argument> e{Argument::operator_job(9, 9)};
  EXPECT_THROW(is_stable(g, e), InputError);
  EXPECT_THROW(is_conflict_free(g, e), InputError);
}

TEST(Dot, DeterministicOutput) {
  auto g = chain();
  const std::vector<Argument> e{a};
  const std::string expected =
      "digraph AF {\n"
      "  \"oj_0_0\" [style=filled, fillcolor=lightblue];\n"
      "  \"oj_0_1\";\n"
      "  \"oj_1_0\";\n"
      "  \"oj_0_0\" -> \"oj_1_0\";\n"
      "  \"oj_1_0\" -> \"oj_0_0\";\n"
      "}\n";
  EXPECT_EQ(to_dot(g, e), expected);
}

TEST(Labels, DefaultLabelsByKind) {
  EXPECT_EQ(default_label(Argument::operator_instrument(1, 2)), "oi_1_2");
  EXPECT_EQ(default_label(Argument::job_instrument(3, 0)), "ji_3_0");
}
