#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tubular/error.hpp"
#include "tubular/graph.hpp"

using namespace tubular;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseGraph, Example1) {
  auto g = test::fixture_graph("example1_wise");
  EXPECT_EQ(g.vertices().size(), 1u);
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[0].z_plus, LatticeVector(2, 2));
  EXPECT_TRUE(g.edges()[0].is_loop());
}

TEST(ParseGraph, SingleVertexNoEdges) {
  auto g = parse_graph(R"({"vertices":["v"],"edges":[]})");
  EXPECT_EQ(g.vertices().size(), 1u);
  EXPECT_TRUE(g.is_tree());
}

TEST(ParseGraph, PositionalErrors) {
  EXPECT_NE(error_of(R"({"vertices":["v"],"edges":[{"id":"e","minus":"v","plus":"w","z_minus":[1,0],"z_plus":[0,1]}]})")
                .find("edges[0] (\"e\").plus: unknown vertex"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"vertices":["v","v"],"edges":[]})").find("vertices[1]: duplicate vertex id"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"vertices":["v"],"edges":[{"id":"e","minus":"v","plus":"v","z_minus":[0,0],"z_plus":[0,1]}]})")
                .find("z_minus: zero inclusion vector"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"vertices":["v"],"edges":[
      {"id":"e","minus":"v","plus":"v","z_minus":[1,0],"z_plus":[0,1]},
      {"id":"e","minus":"v","plus":"v","z_minus":[1,0],"z_plus":[0,1]}]})")
                .find("duplicate"),
            std::string::npos);
  EXPECT_FALSE(error_of("{not json").empty());
}

TEST(SerializeGraph, RoundTripAndDeterministic) {
  for (const char* name : {"example1_wise", "example2_gersten", "raag_path3", "star3", "gpq_1_3"}) {
    auto g = test::fixture_graph(name);
    auto text = serialize_graph(g);
    auto back = parse_graph(text);
    EXPECT_EQ(back, g) << name;
    EXPECT_EQ(serialize_graph(back), text) << name;
  }
}

TEST(SerializeGraph, RandomRoundTrip) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    auto g = test::random_tree(rng, 1 + i % 7, 9, false);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  }
}

TEST(SerializeGraph, BigIntegersSurvive) {
  const Int big = Int(1) << 100;
  TubularGraph g({"v"}, {TubularEdge{"e", "v", "v", {big, 1}, {0, -big}}});
  EXPECT_EQ(parse_graph(serialize_graph(g)), g);
}

TEST(ParallelismClasses, Examples) {
  auto ex1 = test::fixture_graph("example1_wise");
  EXPECT_EQ(parallelism_classes(ex1, "v"),
            (std::vector<LatticeVector>{{1, 0}, {1, 1}, {0, 1}}));
  auto ex2 = test::fixture_graph("example2_gersten");
  auto c2 = parallelism_classes(ex2, "v");
  std::sort(c2.begin(), c2.end());
  EXPECT_EQ(c2, (std::vector<LatticeVector>{{0, 1}, {1, -1}, {1, 1}}));
  EXPECT_THROW(parallelism_classes(ex1, "nope"), InputError);
}

TEST(ParallelismClasses, EveryInclusionHitsExactlyOneClass) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    auto g = test::random_tree(rng, 2 + i % 5, 4, false);
    for (const auto& v : g.vertices()) {
      auto classes = parallelism_classes(g, v);
      for (std::size_t a = 0; a < classes.size(); ++a) {
        EXPECT_TRUE(is_canonical_primitive(classes[a]));
        for (std::size_t b = a + 1; b < classes.size(); ++b)
          EXPECT_FALSE(is_parallel(classes[a], classes[b]));
      }
      for (const auto& e : g.edges()) {
        for (auto end : {EdgeEnd::Minus, EdgeEnd::Plus}) {
          if (e.vertex(end) != v) continue;
          auto hits = std::count_if(classes.begin(), classes.end(), [&](const LatticeVector& c) {
            return is_parallel(c, e.inclusion(end));
          });
          EXPECT_EQ(hits, 1);
        }
      }
    }
  }
}

TEST(CubulationScreen, Examples) {
  auto s1 = cubulation_screen(test::fixture_graph("example1_wise"));
  EXPECT_EQ(s1.verdict, CubulationVerdict::NotCocompactlyCubulated);
  EXPECT_EQ(s1.class_counts.at("v"), 3u);
  auto s2 = cubulation_screen(test::fixture_graph("gpq_1_3"));
  EXPECT_EQ(s2.verdict, CubulationVerdict::NotCocompactlyCubulated);
  auto s3 = cubulation_screen(
      TubularGraph({"v"}, {TubularEdge{"e", "v", "v", {1, 0}, {0, 1}}}));
  EXPECT_EQ(s3.verdict, CubulationVerdict::InconclusiveRequiresBSCheck);
}

TEST(Graph, TreeAndConnectivity) {
  EXPECT_TRUE(test::fixture_graph("raag_path3").is_tree());
  EXPECT_TRUE(test::fixture_graph("star3").is_tree());
  EXPECT_FALSE(test::fixture_graph("example1_wise").is_tree());
  TubularGraph split({"a", "b"}, {});
  EXPECT_FALSE(split.is_connected());
  EXPECT_FALSE(split.is_tree());
}

TEST(Graph, HashIsStable) {
  auto g = test::fixture_graph("raag_path3");
  EXPECT_EQ(graph_hash(g), graph_hash(parse_graph(serialize_graph(g))));
  EXPECT_NE(graph_hash(g), graph_hash(test::fixture_graph("star3")));
  EXPECT_EQ(graph_hash(g).rfind("fnv1a64:", 0), 0u);
}
