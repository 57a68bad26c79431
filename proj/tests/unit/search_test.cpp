#include <gtest/gtest.h>

#include "ssmatch/audit.hpp"
#include "ssmatch/engine.hpp"
#include "ssmatch/generate.hpp"
#include "ssmatch/search.hpp"
#include "test_support.hpp"

namespace ssmatch {
namespace {

using testing::make_graph;
using testing::N;

std::size_t reference_worst(const Graph& g, const Configuration& c, bool branch) {
  return reference::schedule_lengths(testing::to_reference(g), testing::to_reference(c), false, branch).longest;
}

TEST(Search, P2AllNullWorstIsFour) {
  Graph g = generate(GraphKind::path, 2);
  SearchResult r = exhaustive_search(g, all_null(g));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.worst_steps, 4u);
  EXPECT_EQ(r.worst_steps, reference_worst(g, all_null(g), false));
  EXPECT_EQ(r.bound, 8u);
}

TEST(Search, P2AllConfigurationsWithinBoundAndMatchReference) {
  Graph g = generate(GraphKind::path, 2);
  SearchResult r = exhaustive_search(g, std::nullopt, {true});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.initial_configurations, 16u);
  EXPECT_LE(r.worst_steps, 8u);
  std::size_t want = 0;
  for (const auto& s : reference::all_states(testing::to_reference(g))) {
    want = std::max(want, reference_worst(g, testing::from_reference(s), true));
  }
  EXPECT_EQ(r.worst_steps, want);
}

TEST(Search, TriangleAndPathAllNullMatchReference) {
  for (Graph g : {generate(GraphKind::cycle, 3), generate(GraphKind::path, 3), generate(GraphKind::star, 4)}) {
    for (bool branch : {false, true}) {
      SearchOptions opts;
      opts.branch_marriage = branch;
      SearchResult r = exhaustive_search(g, all_null(g), opts);
      EXPECT_TRUE(r.ok()) << r.failure;
      EXPECT_TRUE(r.all_leaves_maximal);
      EXPECT_LE(r.worst_steps, step_bound(g));
      EXPECT_EQ(r.worst_steps, reference_worst(g, all_null(g), branch)) << write_graph(g);
    }
  }
}

TEST(Search, TriangleWorstCaseFrozen) {
  Graph g = generate(GraphKind::cycle, 3);
  SearchResult plain = exhaustive_search(g, all_null(g));
  SearchResult branched = exhaustive_search(g, all_null(g), {true});
  EXPECT_EQ(plain.worst_steps, 6u);
  EXPECT_EQ(branched.worst_steps, 6u);
  EXPECT_EQ(branched.bound, 15u);
}

TEST(Search, WitnessReplaysToWorstLength) {
  auto g = std::make_shared<const Graph>(generate(GraphKind::path, 4));
  SearchResult r = exhaustive_search(*g, std::nullopt, {true});
  ASSERT_TRUE(r.ok());
  Trace t = witness_trace(g, r);
  EXPECT_EQ(t.steps.size(), r.worst_steps);
  EXPECT_TRUE(t.stable());
  EXPECT_TRUE(audit_trace(t).passed());
}

TEST(Search, BudgetExhaustionIsIncomplete) {
  Graph g = generate(GraphKind::complete, 4);
  SearchOptions opts;
  opts.budget = 10;
  SearchResult r = exhaustive_search(g, std::nullopt, opts);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.ok());
}

TEST(Search, UnorderedSeductionLivelocksOnSmallCycles) {
  for (std::size_t n : {3u, 4u}) {
    Graph g = generate(GraphKind::cycle, n);
    SearchOptions opts;
    opts.variant = Variant::unordered_seduction;
    SearchResult r = exhaustive_search(g, all_null(g), opts);
    EXPECT_TRUE(r.livelock) << n;
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(r.witness_schedule.empty());
  }
}

TEST(Search, ConnectedGraphCounts) {
  // Labeled connected graphs on 1..5 nodes.
  const std::vector<std::size_t> want = {1, 1, 4, 38, 728};
  for (std::size_t n = 1; n <= 5; ++n) {
    auto gs = connected_graphs(n);
    EXPECT_EQ(gs.size(), want[n - 1]);
    for (const Graph& g : gs) EXPECT_TRUE(g.connected());
  }
}

TEST(Search, ConfigurationCountMatchesEnumeration) {
  Graph g = generate(GraphKind::star, 4);
  std::size_t seen = 0;
  for_each_configuration(g, [&](const Configuration& c) {
    EXPECT_TRUE(well_formed(c, g));
    ++seen;
  });
  EXPECT_EQ(static_cast<double>(seen), configuration_count(g));
  EXPECT_EQ(seen, reference::all_states(testing::to_reference(g)).size());
}

}  // namespace
}  // namespace ssmatch
