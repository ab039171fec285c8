#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubular/equitable.hpp"
#include "tubular/graph.hpp"
#include "tubular/walls.hpp"

namespace tubular {

// How one tree edge was processed when its child vertex was attached.
struct TraceEdge {
  std::string edge;
  std::string parent;
  std::string child;
  EdgeEnd parent_end = EdgeEnd::Minus;
  std::size_t zero_class = 0;  // the class r with k_r = l_r = 0
  // placement[s] = position in the child's unpermuted list that became class s.
  std::vector<std::size_t> placement;
  std::vector<Int> parent_counts;  // k_s = #[x_s(parent), z at the parent end]
  std::vector<Int> child_counts;   // l_s = #[x_s(child), z at the child end]
};

// Copy counts of a class component multiplied by `factor` before attaching a
// child across `edge`.
struct MultiplicationStep {
  std::string edge;
  std::size_t wall_class = 0;
  Int factor;
  std::vector<std::string> component;
};

struct ConstructionTrace {
  std::string base_vertex;
  std::size_t m = 0;
  std::size_t max_local_classes = 0;  // m == max(2, this)
  std::vector<std::string> order;     // breadth-first from the base vertex
  std::map<std::string, std::size_t> local_classes;
  // Per vertex, the element chosen for each class s (after permutation).
  std::map<std::string, std::vector<LatticeVector>> elements;
  std::vector<TraceEdge> edges;
  std::vector<MultiplicationStep> multiplications;
};

struct TreeConstruction {
  EquitableSet set;
  CompressedWallGraph walls;
  ConstructionTrace trace;
};

// Builds a fortified, primitive equitable set on a tree together with its
// compressed wall graph, class by class along a breadth-first order.
//
// Each vertex gets one canonical primitive per local parallelism class,
// padded with filler primitives to a common size m. Attaching a child across
// an edge e aligns the unique class parallel to e at both ends (one child
// copy, no walls); for every other class s the class component containing
// the parent is multiplied by l_s and the child receives (old parent count)
// * k_s copies, so both sides of e carry the same number of points.
//
// Throws InputError("underlying graph is not a tree") for non-tree input.
TreeConstruction construct_tree_walls(const TubularGraph& g);

// Filler primitives in the fixed order (1,0), (0,1), (1,1), (1,-1), (2,1),
// (1,2), (2,-1), (1,-2), ...: canonical primitives by |x| + |y|, then by
// decreasing x over y >= 0, then by decreasing x over y < 0.
std::vector<LatticeVector> filler_sequence(std::size_t count);

nlohmann::json to_json(const ConstructionTrace& t);

struct Certificate {
  std::string graph_hash;
  TreeConstruction construction;
  bool equitable = false;
  bool fortified = false;
  bool primitive = false;
  bool propdil = false;
  bool undilated = false;
  // "explicit" when the wall graph was materialized, otherwise "class-graph".
  std::string check_level;
  Int wall_vertices;
  Int wall_edges;
  // Explicit-level checks, when run, and whether they matched the class graph.
  std::optional<bool> class_graph_agrees;
  std::vector<std::string> problems;

  bool all_passed() const { return equitable && fortified && primitive && propdil && undilated; }
};

// Runs construct_tree_walls and re-verifies its output with the independent
// checkers. Expansion is attempted up to `expand_limit` wall vertices/edges.
Certificate certify_virtually_special(const TubularGraph& g,
                                      std::size_t expand_limit = kDefaultExpandLimit);

nlohmann::json to_json(const Certificate& c);

}  // namespace tubular
