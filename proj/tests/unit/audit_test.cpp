#include <gtest/gtest.h>

#include "ssmatch/audit.hpp"
#include "ssmatch/engine.hpp"
#include "ssmatch/generate.hpp"
#include "ssmatch/scheduler.hpp"
#include "ssmatch/search.hpp"
#include "ssmatch/trace_io.hpp"
#include "test_support.hpp"

namespace ssmatch {
namespace {

using testing::fig1_graph;
using testing::fig1_initial;
using testing::forge;
using testing::make_graph;
using testing::moves_of;
using testing::N;

Trace fig1_trace() {
  return run(std::make_shared<const Graph>(fig1_graph()), fig1_initial(),
             parse_policy("sequential_adversarial_heuristic:fig1"), 0);
}

TEST(Audit, Fig1Passes) {
  AuditReport r = audit_trace(fig1_trace());
  EXPECT_TRUE(r.passed()) << write_report(r);
  EXPECT_EQ(r.check("update_limit").counters, "max_updates=1 limit=2");
  EXPECT_EQ(r.check("round_bound").verdict, Verdict::not_applicable);
  EXPECT_EQ(r.checks.size(), audit_check_names().size());
  EXPECT_THROW(r.check("nonsense"), std::out_of_range);
}

TEST(Audit, RandomRunsPassUnderEveryPolicy) {
  for (const PolicySpec& p : all_policies()) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto g = std::make_shared<const Graph>(generate(GraphKind::random_gnm, 100, 300, seed));
      Trace t = run(g, random_configuration(*g, seed), p, seed);
      AuditReport r = audit_trace(t);
      ASSERT_TRUE(r.passed()) << to_string(p) << "\n" << write_report(r);
      if (is_fair(p.kind)) EXPECT_EQ(r.check("round_bound").verdict, Verdict::pass);
    }
  }
}

TEST(Audit, ForgedThirdUpdateIsLocalized) {
  Trace t = fig1_trace();
  auto steps = moves_of(t);
  // i already executed its Update at step 1; two more land at steps 2 and 3.
  steps.insert(steps.begin() + 2, {Move{N(0), Rule::Update, {}}});
  steps.insert(steps.begin() + 2, {Move{N(0), Rule::Update, {}}});
  AuditReport r = audit_trace(forge(t, steps));
  const CheckResult& c = r.check("update_limit");
  EXPECT_EQ(c.verdict, Verdict::fail);
  EXPECT_EQ(c.step_index, 3u);
  EXPECT_EQ(c.counters, "max_updates=3 limit=2");
  EXPECT_FALSE(r.passed());
  EXPECT_NE(write_report(r).find("update_limit: fail"), std::string::npos);
}

TEST(Audit, ForgedDivorceBreaksPersistence) {
  Trace t = fig1_trace();
  auto steps = moves_of(t);
  steps.push_back({Move{N(1), Rule::Abandonment, {}}});
  AuditReport r = audit_trace(forge(t, steps));
  EXPECT_EQ(r.check("marriage_persistence").verdict, Verdict::fail);
  EXPECT_EQ(r.check("marriage_persistence").step_index, 4u);
  EXPECT_EQ(r.check("move_legality").verdict, Verdict::fail);
  EXPECT_EQ(r.check("move_legality").step_index, 4u);
}

TEST(Audit, ForgedEdgeChurnBreaksEdgeLimit) {
  auto g = std::make_shared<const Graph>(make_graph(2, {{0, 1}}));
  Trace t = run(g, all_null(*g), parse_policy("sequential_random"), 0);
  std::vector<std::vector<Move>> steps;
  for (int k = 0; k < 2; ++k) {
    steps.push_back({Move{N(0), Rule::Seduction, {}}});
    steps.push_back({Move{N(0), Rule::Abandonment, {}}});
  }
  AuditReport r = audit_trace(forge(t, steps));
  const CheckResult& c = r.check("edge_move_limit");
  EXPECT_EQ(c.verdict, Verdict::fail);
  // Three-step edges need a one-way initial pointer; all-null has none.
  EXPECT_EQ(c.step_index, 2u);
}

// A process pointed at by two neighbors can sit on two three-step edges;
// each is charged to the neighbor whose pointer named it.
TEST(Audit, TwoThreeStepEdgesAtOneNodeAreLegal) {
  auto g = std::make_shared<const Graph>(generate(GraphKind::path, 3));
  Configuration c0(3);
  c0[N(0)].p = N(1);
  c0[N(1)].m = true;
  c0[N(2)].p = N(1);
  Trace t = run(g, c0, parse_policy("synchronous"), 0);
  AuditReport r = audit_trace(t);
  EXPECT_TRUE(r.passed()) << write_report(r);
  EXPECT_EQ(r.check("edge_move_limit").counters,
            "max_edge_steps=3 limit=3 edges_at_3=2 max_edges_at_3_per_node=2");
}

TEST(Audit, ThreeStepEdgeWithoutInitialPointerIsFlagged) {
  auto g = std::make_shared<const Graph>(make_graph(2, {{0, 1}}));
  Trace t = run(g, all_null(*g), parse_policy("sequential_random"), 0);
  std::vector<std::vector<Move>> steps = {{Move{N(0), Rule::Seduction, {}}},
                                          {Move{N(0), Rule::Abandonment, {}}},
                                          {Move{N(0), Rule::Seduction, {}}}};
  const CheckResult& c = audit_trace(forge(t, steps)).check("edge_move_limit");
  EXPECT_EQ(c.verdict, Verdict::fail);
  EXPECT_EQ(c.step_index, 2u);
}

TEST(Audit, UnstableEndFailsStabilizedAndReportsSnapshot) {
  Trace t = fig1_trace();
  auto steps = moves_of(t);
  steps.pop_back();
  AuditReport r = audit_trace(forge(t, steps));
  const CheckResult& c = r.check("stabilized");
  EXPECT_EQ(c.verdict, Verdict::fail);
  EXPECT_EQ(c.config_index, 3u);
  EXPECT_FALSE(c.snapshot.empty());
}

TEST(Audit, TamperedFinalConfigurationIsCorrupt) {
  Trace t = fig1_trace();
  t.final_config[N(2)].m = true;
  EXPECT_THROW(audit_trace(t), CorruptTrace);
  Trace u = fig1_trace();
  u.steps[0].moves[0].rule = Rule::Abandonment;  // p_i = null: no effect defined
  EXPECT_THROW(audit_trace(u), CorruptTrace);
}

TEST(Audit, DisconnectedGraphNoted) {
  auto g = std::make_shared<const Graph>(make_graph(4, {{0, 1}, {2, 3}}));
  AuditReport r = audit_trace(run(g, all_null(*g), parse_policy("synchronous"), 0));
  EXPECT_TRUE(r.passed()) << write_report(r);
  EXPECT_FALSE(r.connected);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Audit, BrokenVariantCycleFailsBoundedChecks) {
  auto g = std::make_shared<const Graph>(generate(GraphKind::cycle, 3));
  SearchOptions opts;
  opts.variant = Variant::unordered_seduction;
  SearchResult sr = exhaustive_search(*g, all_null(*g), opts);
  ASSERT_TRUE(sr.livelock);
  Trace w = witness_trace(g, sr, Variant::unordered_seduction);
  ASSERT_FALSE(w.steps.empty());
  // Loop the witness's cycle until the step bound is exceeded.
  auto cs = replay(w);
  std::size_t start = 0;
  while (start < cs.size() - 1 && !(cs[start] == cs.back())) ++start;
  ASSERT_LT(start, cs.size() - 1);
  auto steps = moves_of(w);
  std::vector<std::vector<Move>> loop(steps.begin() + static_cast<long>(start), steps.end());
  while (steps.size() <= step_bound(*g)) steps.insert(steps.end(), loop.begin(), loop.end());
  AuditReport r = audit_trace(forge(w, steps));
  EXPECT_EQ(r.check("stabilized").verdict, Verdict::fail);
  EXPECT_EQ(r.check("step_bound").verdict, Verdict::fail);
  EXPECT_EQ(r.check("step_bound").step_index, step_bound(*g));
}

}  // namespace
}  // namespace ssmatch
