#include <gtest/gtest.h>

#include <random>

#include "argwf/io.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace argwf;
using argwf::io::json;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

json example2_doc() { return json::parse(fixtures::read(fixtures::path("example2_problem.json"))); }

}  // namespace

TEST(ParseProblem, TwoOperatorExample) {
  const auto inst = fixtures::problem("example2");
  EXPECT_EQ(inst.operator_count(), 2u);
  EXPECT_EQ(inst.job_count(), 3u);
  const auto s = fixtures::schedule(inst, "example2_schedule.json");
  const auto report = cost_report(inst, s);
  EXPECT_NEAR(report.per_operator[0], 88.123, 1e-3);
  EXPECT_NEAR(report.per_operator[1], 43.0, 1e-9);
}

TEST(ParseProblem, EmptyJobsIsValid) {
  json doc = example2_doc();
  doc["jobs"] = json::array();
  doc["processing"] = json::array({json::array(), json::array()});
  const auto inst = io::problem_from_json(doc);
  EXPECT_EQ(inst.job_count(), 0u);
  doc["processing"] = json::array();
  EXPECT_EQ(io::problem_from_json(doc).processing.size(), 2u);
}

TEST(ParseProblem, ProcessingDimensionError) {
  json doc = example2_doc();
  doc["processing"] = json::array({json::array({1, 2}), json::array({3, 4})});
  const auto msg = error_of([&] { io::problem_from_json(doc); });
  EXPECT_EQ(msg.rfind("$.processing:", 0), 0u) << msg;
}

TEST(ParseProblem, UnknownFieldsRejected) {
  json doc = example2_doc();
  doc["colour"] = "red";
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }), "$.colour: unknown field");
  doc = example2_doc();
  doc["jobs"][1]["priority"] = 3;
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }), "$.jobs[1].priority: unknown field");
}

TEST(ParseProblem, PathDiagnostics) {
  json doc = example2_doc();
  doc.erase("alpha");
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }), "$.alpha: missing required field");
  doc = example2_doc();
  doc["jobs"][2]["x"] = "far";
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }), "$.jobs[2].x: expected number, got string");
  doc = example2_doc();
  doc["operators"][0]["skills"] = json::array({"Q"});
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }), "$.operators[0].skills[0]: unknown skill 'Q'");
  doc = example2_doc();
  doc["beta"] = 0.7;
  EXPECT_EQ(error_of([&] { io::problem_from_json(doc); }).rfind("$.alpha", 0), 0u);
  EXPECT_EQ(error_of([&] { io::parse_problem("{not json"); }).rfind("$: invalid JSON", 0), 0u);
}

TEST(Emit, CanonicalTextIsFixedPoint) {
  for (const char* name : {"example1", "example2", "example4", "example5", "example6", "example7"}) {
    const auto once = io::emit_problem(fixtures::problem(name));
    EXPECT_EQ(io::emit_problem(io::parse_problem(once)), once) << name;
  }
  const auto inst = fixtures::problem("example7");
  const auto once = io::emit_schedule(inst, fixtures::schedule(inst, "example7_schedule.json"));
  EXPECT_EQ(io::emit_schedule(inst, io::parse_schedule(inst, once)), once);
}

TEST(Emit, RandomRoundTrip) {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 200; ++round) {
    oracle::RandomSpec spec{static_cast<std::size_t>(1 + round % 4), static_cast<std::size_t>(round % 7), 15, 1, 120, 3, 3, true};
    const auto inst = oracle::random_instance(rng, spec);
    const auto back = io::parse_problem(io::emit_problem(inst));
    ASSERT_EQ(back, inst);
    auto s = oracle::random_schedule(rng, inst);
    for (std::size_t t = 0; t < inst.instrument_count(); ++t) s.instruments[t % inst.operator_count()].insert(t);
    ASSERT_EQ(io::parse_schedule(inst, io::emit_schedule(inst, s)), s);
  }
}

TEST(Emit, CanonicalDumpFormatting) {
  const json v = {{"b", 1.5}, {"a", json::array({-0.0, 2, "x"})}, {"c", nullptr}};
  EXPECT_EQ(io::canonical_dump(v, -1), R"({"a":[0.000000,2,"x"],"b":1.500000,"c":null})");
  EXPECT_EQ(io::canonical_dump(json::object(), 2), "{}");
}

TEST(ParseSchedule, Diagnostics) {
  const auto inst = fixtures::problem("example2");
  EXPECT_EQ(error_of([&] { io::parse_schedule(inst, R"({"routes":{"O9":[]}})"); }),
            "$.routes.O9: unknown operator 'O9'");
  EXPECT_EQ(error_of([&] { io::parse_schedule(inst, R"({"routes":{"O1":["J7"]}})"); }),
            "$.routes.O1[0]: unknown job 'J7'");
  EXPECT_EQ(error_of([&] { io::parse_schedule(inst, R"({"routes":{},"extra":1})"); }), "$.extra: unknown field");
  const auto s = io::parse_schedule(inst, R"({"routes":{"O2":["J3"]}})");
  EXPECT_EQ(s.routes, (std::vector<std::vector<JobIndex>>{{}, {2}}));
}

TEST(Moves, JsonRoundTrip) {
  const auto inst = fixtures::problem("example7");
  std::vector<MoveSuggestion> moves(5);
  moves[0] = {MoveKind::RelocateInter, 0, 1, 3, 2, std::nullopt, std::nullopt, 1.25};
  moves[1] = {MoveKind::SwapInter, 1, 0, 2, 0, 0, std::nullopt, 0.5};
  moves[2] = {MoveKind::RelocateIntra, 1, 1, 2, 0, std::nullopt, std::nullopt, 2.0};
  moves[3] = {MoveKind::SwapIntra, 0, 0, 0, 0, 3, std::nullopt, 0.0};
  moves[4] = {MoveKind::MoveInstrument, kNoOperator, 1, 0, 0, std::nullopt, 3, 0.0};
  for (const auto& mv : moves) EXPECT_EQ(io::move_from_json(inst, io::move_to_json(inst, mv)), mv);
  EXPECT_EQ(error_of([&] { io::move_from_json(inst, json{{"kind", "teleport"}}); }),
            "$.kind: unknown move kind 'teleport'");
}

TEST(Explanations, JsonShape) {
  const auto inst = fixtures::problem("example2");
  const auto s = fixtures::schedule(inst, "example2_schedule.json");
  const auto doc = io::explanation_to_json(inst, explain(inst, s)[0]);
  for (const char* key : {"code", "witness", "message", "suggestion", "delta"}) EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["code"], "NOT_EXTENDED_EFFICIENT");
  EXPECT_EQ(doc["witness"]["target"], "a(O2,J3)");
  EXPECT_EQ(doc["suggestion"]["kind"], "relocate-inter");
}

TEST(Graphs, JsonExport) {
  const auto inst = fixtures::problem("example5");
  const auto s = fixtures::schedule(inst, "example5_schedule.json");
  const auto view = io::af_view(inst, s, AfKind::Skills);
  const auto doc = io::af_to_json(inst, view.graph, view.extension);
  EXPECT_EQ(doc["arguments"].size(), 9u);
  EXPECT_EQ(doc["attacks"].size(), 21u);
  EXPECT_EQ(doc["extension"], json::array({"a(O1,J1)", "a(O2,J2)", "a(O3,J3)"}));
  const auto dot = io::af_dot(inst, view);
  EXPECT_NE(dot.find("\"a(O2,J2)\" -> \"a(O2,J2)\""), std::string::npos);
}
