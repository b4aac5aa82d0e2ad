// Planner/executor checked against the brute-force reference on random
// graphs and random queries.
#include <gtest/gtest.h>

#include "pitchgraph/query/executor.hpp"
#include "pitchgraph/query/parser.hpp"
#include "query_gen.hpp"
#include "test_support.hpp"

using namespace pitchgraph;
namespace pt = pitchgraph::testing;
using namespace pitchgraph::query;

namespace {

store::Graph graph_for(std::mt19937_64& rng, bool small) {
  pt::RandomGraphSpec spec;
  std::uniform_int_distribution<std::size_t> nodes(small ? 4 : 8, small ? 20 : 60);
  spec.nodes = nodes(rng);
  spec.edges = std::uniform_int_distribution<std::size_t>(0, spec.nodes * 2)(rng);
  auto g = pt::random_graph(rng, spec);
  g.freeze();
  return g;
}

}  // namespace

TEST(Oracle, ExecuteMatchesReference) {
  std::mt19937_64 rng(2024);
  int nonempty = 0;
  int limited = 0;
  constexpr int kPairs = 1200;
  for (int i = 0; i < kPairs; ++i) {
    const auto gq = pt::random_query(rng);
    const bool two_paths = gq.text.find("), (") != std::string::npos;
    const auto g = graph_for(rng, two_paths);
    const Query q = parse(gq.text);
    const auto fast = execute(q, g);
    const auto slow = reference_execute(q, g);
    ASSERT_EQ(fast.columns, slow.columns) << gq.text;
    ASSERT_TRUE(pt::same_multiset(fast.rows, slow.rows, !gq.has_limit))
        << "pair " << i << ": " << gq.text << "\nexecute:\n"
        << pt::rows_text(fast.rows) << "reference:\n"
        << pt::rows_text(slow.rows);
    EXPECT_EQ(fast.stats.matched, slow.stats.matched) << gq.text;
    nonempty += fast.stats.matched > 0;
    limited += gq.has_limit;
  }
  // The generator must actually exercise the matcher.
  EXPECT_GT(nonempty, kPairs / 3);
  EXPECT_GT(limited, 50);
}

TEST(Oracle, WorstOrderPlanSameRows) {
  std::mt19937_64 rng(77);
  ExecOptions worst;
  worst.plan.worst_order = true;
  for (int i = 0; i < 500; ++i) {
    const auto gq = pt::random_query(rng);
    const auto g = graph_for(rng, true);
    const Query q = parse(gq.text);
    const auto a = execute(q, g);
    const auto b = execute(q, g, worst);
    ASSERT_TRUE(pt::same_multiset(a.rows, b.rows, !gq.has_limit)) << gq.text;
  }
}

TEST(Oracle, LimitIsPrefixOfOrdered) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 300; ++i) {
    const auto gq = pt::random_query(rng);
    if (!gq.has_order) continue;
    const auto g = graph_for(rng, true);
    Query q = parse(gq.text);
    q.limit.reset();
    const auto full = execute(q, g).rows;
    for (std::int64_t k : {1, 2, 5}) {
      q.limit = k;
      const auto part = execute(q, g).rows;
      const std::size_t n = std::min<std::size_t>(full.size(), static_cast<std::size_t>(k));
      ASSERT_EQ(part.size(), n);
      EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin())) << gq.text;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(Oracle, FixtureQueriesMatchReference) {
  const auto& out = pt::fixture_build();
  const std::vector<std::string> queries = {
      "MATCH (t:Team {name:'Bayern Munich'})<-[:ASSOCIATED_TO]-(e:Event {name:'Goal'}) RETURN count(e)",
      "MATCH (p:Player)-[:PLAYS_FOR]->(t:Team) RETURN t.name, count(p), collect(p.name)",
      "MATCH (t:Team)-[:WINNER]->(g:Game)<-[:LOSER]-(l:Team) RETURN t.name, l.name, g.score",
      "MATCH (p:Player)-[:RECEIVED]->(f:Fact)-[:IS_PART_OF]->(g:Game) WHERE f.kind CONTAINS 'Card' "
      "RETURN p.name, f.time, g.date ORDER BY g.date, f.time",
      "MATCH (e:Event)-[:IS_PART_OF]->(g:Game) WHERE e.half = 2 AND e.team IS NOT NULL RETURN DISTINCT e.name",
  };
  for (const auto& text : queries) {
    const Query q = parse(text);
    for (const store::Graph* g : {&out.labels_kg, &out.captions_kg}) {
      const auto a = execute(q, *g);
      const auto b = reference_execute(q, *g);
      EXPECT_TRUE(pt::same_multiset(a.rows, b.rows)) << text;
    }
  }
}
