#include <gtest/gtest.h>

#include <functional>

#include "ssmatch/engine.hpp"
#include "ssmatch/generate.hpp"
#include "ssmatch/matching.hpp"
#include "ssmatch/rng.hpp"
#include "ssmatch/scheduler.hpp"
#include "test_support.hpp"

namespace ssmatch {
namespace {

using testing::fig1_graph;
using testing::fig1_initial;
using testing::make_graph;
using testing::N;

Matching matching(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> es) {
  Matching m;
  for (auto [u, v] : es) m.edges.push_back(Edge{N(u), N(v)});
  return m;
}

// Maximal iff no proper superset drawn from E is still a matching.
bool maximal_oracle(const Matching& mt, const Graph& g) {
  std::vector<bool> used(g.node_count());
  for (const Edge& e : mt.edges) used[e.u.index()] = used[e.v.index()] = true;
  for (const Edge& e : g.edges()) {
    bool in = false;
    for (const Edge& f : mt.edges) in = in || f == e;
    if (in) continue;
    Matching bigger = mt;
    bigger.edges.push_back(e);
    bool disjoint = true;
    for (std::size_t a = 0; a < bigger.edges.size(); ++a) {
      for (std::size_t b = a + 1; b < bigger.edges.size(); ++b) {
        const Edge &x = bigger.edges[a], &y = bigger.edges[b];
        disjoint = disjoint && x.u != y.u && x.u != y.v && x.v != y.u && x.v != y.v;
      }
    }
    if (disjoint) return false;
  }
  return true;
}

TEST(Stability, Examples) {
  Graph one = make_graph(1, {});
  EXPECT_TRUE(is_stable(all_null(one), one));
  EXPECT_FALSE(is_stable(fig1_initial(), fig1_graph()));
  Configuration d(3);
  d[N(0)] = {N(1), true};
  d[N(1)] = {N(0), true};
  EXPECT_TRUE(is_stable(d, fig1_graph()));
}

TEST(ExtractMatching, Fig1FinalAndAllNull) {
  Configuration d(3);
  d[N(0)] = {N(1), true};
  d[N(1)] = {N(0), true};
  EXPECT_EQ(extract_matching(d, fig1_graph()), matching({{0, 1}}));
  EXPECT_TRUE(extract_matching(fig1_initial(), fig1_graph()).edges.empty());
}

TEST(ExtractMatching, RandomConfigurationsGiveValidMatchings) {
  Graph g = generate(GraphKind::random_gnm, 12, 25, 1);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Configuration c = random_configuration(g, seed);
    Matching mt = extract_matching(c, g);
    EXPECT_NO_THROW(validate_matching(mt, g));
    for (const Edge& e : mt.edges) {
      EXPECT_EQ(c[e.u].p, e.v);
      EXPECT_EQ(c[e.v].p, e.u);
    }
  }
}

TEST(CheckMaximal, Examples) {
  Graph p4 = generate(GraphKind::path, 4);
  EXPECT_TRUE(check_maximal(matching({{1, 2}}), p4).ok());
  auto v = check_maximal(matching({{0, 1}}), p4);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(*v.augmenting, (Edge{N(2), N(3)}));
  EXPECT_FALSE(check_maximal(Matching{}, p4).ok());
  Graph one = make_graph(1, {});
  EXPECT_TRUE(check_maximal(Matching{}, one).ok());
}

TEST(CheckMaximal, RejectsInvalidMatchings) {
  Graph p4 = generate(GraphKind::path, 4);
  EXPECT_THROW(check_maximal(matching({{0, 1}, {1, 2}}), p4), InvalidMatching);
  EXPECT_THROW(check_maximal(matching({{0, 2}}), p4), InvalidMatching);
}

TEST(CheckMaximal, AgreesWithSupersetOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = generate(GraphKind::random_gnm, 7, 6 + seed % 10, seed);
    Rng rng(seed);
    Matching mt;
    std::vector<bool> used(7);
    for (const Edge& e : g.edges()) {
      if (!used[e.u.index()] && !used[e.v.index()] && rng.coin()) {
        mt.edges.push_back(e);
        used[e.u.index()] = used[e.v.index()] = true;
      }
    }
    EXPECT_EQ(check_maximal(mt, g).ok(), maximal_oracle(mt, g)) << "seed " << seed;
  }
}

TEST(CheckMaximal, EveryStableEndpointIsMaximal) {
  for (const PolicySpec& p : all_policies()) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto g = std::make_shared<const Graph>(generate(GraphKind::random_gnm, 15, 14 + seed * 3, seed));
      Trace t = run(g, random_configuration(*g, seed), p, seed);
      ASSERT_TRUE(t.stable());
      Matching mt = extract_matching(t.final_config, *g);
      EXPECT_TRUE(maximal_oracle(mt, *g));
      EXPECT_TRUE(check_maximal(mt, *g).ok());
    }
  }
}

}  // namespace
}  // namespace ssmatch
