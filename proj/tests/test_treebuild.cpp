#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tubular/error.hpp"
#include "tubular/treebuild.hpp"

using namespace tubular;

namespace {

std::map<LatticeVector, Int> entries_at(const EquitableSet& s, const std::string& v) {
  std::map<LatticeVector, Int> out;
  for (const auto& e : s.at(v)) out[e.element] = e.count;
  return out;
}

}  // namespace

TEST(FillerSequence, FixedOrder) {
  EXPECT_EQ(filler_sequence(8), (std::vector<LatticeVector>{
                                    {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}}));
  for (const auto& v : filler_sequence(200)) EXPECT_TRUE(is_canonical_primitive(v));
  auto f = filler_sequence(200);
  EXPECT_EQ(std::set<LatticeVector>(f.begin(), f.end()).size(), f.size());
}

TEST(ConstructTreeWalls, RaagPath) {
  auto t = construct_tree_walls(test::fixture_graph("raag_path3"));
  EXPECT_EQ(t.trace.m, 2u);
  EXPECT_EQ(t.trace.base_vertex, "v1");
  EXPECT_EQ(t.trace.order, (std::vector<std::string>{"v1", "v0", "v2"}));
  for (const auto& node : t.walls.nodes()) EXPECT_EQ(node.count, 1);
  EXPECT_EQ(t.walls.wall_vertex_count(), 6);
  EXPECT_EQ(t.walls.wall_edge_count(), 2);
}

TEST(ConstructTreeWalls, SingleEdgeHandTrace) {
  // v0 gets (1,0) padded with (0,1); v1 gets (1,1) padded with (1,0). The
  // class parallel to e is class 0 at both ends; class 1 meets e once on
  // each side, so all counts stay 1.
  TubularGraph g({"v0", "v1"}, {TubularEdge{"e", "v0", "v1", {1, 0}, {1, 1}}});
  auto t = construct_tree_walls(g);
  EXPECT_EQ(t.trace.base_vertex, "v0");
  EXPECT_EQ(entries_at(t.set, "v0"), (std::map<LatticeVector, Int>{{{1, 0}, 1}, {{0, 1}, 1}}));
  EXPECT_EQ(entries_at(t.set, "v1"), (std::map<LatticeVector, Int>{{{1, 1}, 1}, {{1, 0}, 1}}));
  EXPECT_EQ(edge_end_sum(g, t.set, "e", EdgeEnd::Minus), 1);
  EXPECT_EQ(edge_end_sum(g, t.set, "e", EdgeEnd::Plus), 1);
}

TEST(ConstructTreeWalls, MultiplicationHandTrace) {
  // Class 1 is (0,1) at v0 with k = 1 and (1,0) at v1 with l = #[(1,0),(1,3)] = 3,
  // so the parent's class-1 count triples and the child keeps 1 * k = 1.
  TubularGraph g({"v0", "v1"}, {TubularEdge{"e", "v0", "v1", {1, 0}, {1, 3}}});
  auto t = construct_tree_walls(g);
  EXPECT_EQ(entries_at(t.set, "v0"), (std::map<LatticeVector, Int>{{{1, 0}, 1}, {{0, 1}, 3}}));
  EXPECT_EQ(entries_at(t.set, "v1"), (std::map<LatticeVector, Int>{{{1, 3}, 1}, {{1, 0}, 1}}));
  ASSERT_EQ(t.trace.multiplications.size(), 1u);
  EXPECT_EQ(t.trace.multiplications[0].factor, 3);
  EXPECT_EQ(t.walls.wall_edge_count(), 3);
}

TEST(ConstructTreeWalls, PlacementAlignsZeroClass) {
  // Base is "a" (two classes, smallest id). At "c" the class parallel to e,
  // (0,1), comes second in local order and is swapped into slot 0.
  TubularGraph g({"a", "c", "x", "y"}, {TubularEdge{"f", "c", "x", {1, 1}, {1, 0}},
                                        TubularEdge{"e", "a", "c", {1, 0}, {0, 1}},
                                        TubularEdge{"g", "a", "y", {0, 1}, {1, 0}}});
  auto t = construct_tree_walls(g);
  EXPECT_EQ(t.trace.base_vertex, "a");
  const auto& te = *std::find_if(t.trace.edges.begin(), t.trace.edges.end(),
                                 [](const TraceEdge& x) { return x.edge == "e"; });
  EXPECT_EQ(te.zero_class, 0u);
  EXPECT_EQ(te.placement, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(t.trace.elements.at("c"), (std::vector<LatticeVector>{{0, 1}, {1, 1}}));
  for (const auto& edge : t.trace.edges) {
    EXPECT_EQ(edge.parent_counts[edge.zero_class], 0);
    EXPECT_EQ(edge.child_counts[edge.zero_class], 0);
    for (std::size_t s = 0; s < t.trace.m; ++s)
      if (s != edge.zero_class) {
        EXPECT_GT(edge.parent_counts[s], 0);
        EXPECT_GT(edge.child_counts[s], 0);
      }
  }
}

TEST(ConstructTreeWalls, SingleVertex) {
  TubularGraph g({"v"}, {});
  auto cert = certify_virtually_special(g);
  EXPECT_EQ(entries_at(cert.construction.set, "v"), (std::map<LatticeVector, Int>{{{1, 0}, 1}, {{0, 1}, 1}}));
  EXPECT_EQ(cert.wall_edges, 0);
  EXPECT_TRUE(cert.all_passed());
}

TEST(ConstructTreeWalls, RejectsNonTrees) {
  try {
    construct_tree_walls(test::fixture_graph("example1_wise"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "underlying graph is not a tree");
  }
  EXPECT_THROW(construct_tree_walls(TubularGraph({"a", "b"}, {})), InputError);
}

TEST(Certify, RaagPathAllChecks) {
  auto cert = certify_virtually_special(test::fixture_graph("raag_path3"));
  EXPECT_TRUE(cert.equitable);
  EXPECT_TRUE(cert.fortified);
  EXPECT_TRUE(cert.primitive);
  EXPECT_TRUE(cert.propdil);
  EXPECT_TRUE(cert.undilated);
  EXPECT_EQ(cert.check_level, "explicit");
  EXPECT_EQ(cert.class_graph_agrees, true);
  auto j = to_json(cert);
  EXPECT_EQ(j["status"], "certified");
  EXPECT_EQ(j["m"], 2);
  EXPECT_EQ(j["three_class_hypothesis_used"], false);
}

TEST(Certify, StarUsesThreeClasses) {
  auto cert = certify_virtually_special(test::fixture_graph("star3"));
  EXPECT_TRUE(cert.all_passed());
  EXPECT_EQ(cert.construction.trace.m, 3u);
  EXPECT_EQ(to_json(cert)["three_class_hypothesis_used"], true);
}

TEST(Certify, ClassGraphLevelWhenOverLimit) {
  auto cert = certify_virtually_special(test::fixture_graph("star3"), 5);
  EXPECT_EQ(cert.check_level, "class-graph");
  EXPECT_FALSE(cert.class_graph_agrees.has_value());
  EXPECT_TRUE(cert.all_passed());
}

TEST(Certify, Deterministic) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 10; ++i) {
    auto g = test::random_tree(rng, 6, 5);
    EXPECT_EQ(to_json(certify_virtually_special(g)).dump(), to_json(certify_virtually_special(g)).dump());
  }
}

TEST(Certify, RandomTreesProperties) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = test::random_tree(rng, 1 + trial % 6, 5, trial % 2 == 0);
    auto cert = certify_virtually_special(g, 200'000);
    ASSERT_TRUE(cert.all_passed()) << serialize_graph(g);
    const auto& t = cert.construction;

    // Leaf completion: m distinct canonical classes with positive counts everywhere.
    for (const auto& v : g.vertices()) {
      const auto& list = t.trace.elements.at(v);
      ASSERT_EQ(list.size(), t.trace.m);
      std::set<LatticeVector> distinct(list.begin(), list.end());
      EXPECT_EQ(distinct.size(), t.trace.m);
      for (const auto& x : list) EXPECT_TRUE(is_canonical_primitive(x));
      EXPECT_EQ(t.set.at(v).size(), t.trace.m);
      for (const auto& e : t.set.at(v)) EXPECT_GT(e.count, 0);
    }
    // Expansion consistency and class separation.
    for (const auto& e : t.walls.edges()) {
      const auto& a = t.walls.nodes()[t.walls.node_index(e.wall_class, e.minus_vertex)];
      const auto& b = t.walls.nodes()[t.walls.node_index(e.wall_class, e.plus_vertex)];
      EXPECT_EQ(a.count * e.minus_count, b.count * e.plus_count);
      EXPECT_EQ(a.wall_class, b.wall_class);
    }
    if (cert.check_level == "explicit") {
      EXPECT_EQ(cert.class_graph_agrees, true);
      auto w = expand(t.walls);
      for (const auto& we : w.edges()) {
        auto cls = [&](std::size_t id) {
          const auto& wv = w.vertices()[id];
          const auto& list = t.trace.elements.at(wv.over);
          return std::find(list.begin(), list.end(), wv.element) - list.begin();
        };
        EXPECT_EQ(cls(we.from), cls(we.to));
      }
    }
  }
}
