#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubular/equitable.hpp"
#include "tubular/error.hpp"
#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"

namespace tubular {

inline constexpr std::size_t kDefaultExpandLimit = 1'000'000;

// Thrown when a materialization would exceed the configured limit.
class LimitExceeded : public Error {
 public:
  LimitExceeded(const std::string& what, Int required, std::size_t limit)
      : Error(what + ": requires " + required.str() + " items, limit is " +
              std::to_string(limit)),
        required_(std::move(required)),
        limit_(limit) {}

  const Int& required() const { return required_; }
  std::size_t limit() const { return limit_; }

 private:
  Int required_;
  std::size_t limit_;
};

struct WallVertex {
  std::size_t id = 0;
  std::string over;  // vertex of the underlying graph
  LatticeVector element;

  friend bool operator==(const WallVertex&, const WallVertex&) = default;
};

struct WallEdge {
  std::size_t id = 0;
  std::string over;      // edge of the underlying graph
  std::size_t from = 0;  // wall vertex at the minus end
  std::size_t to = 0;    // wall vertex at the plus end
  Int minus_count;       // #[from.element, z_minus]
  Int plus_count;        // #[to.element, z_plus]

  friend bool operator==(const WallEdge&, const WallEdge&) = default;
};

// The graph of immersed walls. Wall vertices are points, one per curve copy;
// ids are dense and equal to positions.
class WallGraph {
 public:
  WallGraph() = default;
  // Checks dense ids, endpoint references and positive counts.
  WallGraph(std::vector<WallVertex> vertices, std::vector<WallEdge> edges);

  const std::vector<WallVertex>& vertices() const { return vertices_; }
  const std::vector<WallEdge>& edges() const { return edges_; }

  friend bool operator==(const WallGraph&, const WallGraph&) = default;

 private:
  std::vector<WallVertex> vertices_;
  std::vector<WallEdge> edges_;
};

nlohmann::json to_json(const WallGraph& w);
WallGraph wall_graph_from_json(const nlohmann::json& j);

// Projection onto g, stored counts against recomputed intersection numbers
// and, when s is given, one wall edge per intersection point on each side.
CheckReport validate_walls(const WallGraph& w, const TubularGraph& g,
                           const EquitableSet* s = nullptr);

// One wall vertex per curve copy; per edge, intersection points on each side
// ordered by (element, copy, point) and paired in order.
WallGraph build_walls(const TubularGraph& g, const EquitableSet& s,
                      std::size_t limit = kDefaultExpandLimit);

struct PathStep {
  std::size_t edge = 0;
  bool forward = true;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Product of minus/plus along forward steps and plus/minus along reverse
// steps. Empty path gives 1. Throws InputError on a disconnected step.
Rational dilation(const WallGraph& w, const std::vector<PathStep>& path);

struct DilationWitness {
  std::vector<PathStep> cycle;  // closed path
  Rational dilation;
};

struct UndilatedResult {
  bool ok = true;
  std::optional<DilationWitness> witness;
};

// Spanning-tree potentials per component; the first non-tree edge (in id
// order) whose ratio disagrees yields its fundamental cycle as witness.
UndilatedResult check_undilated(const WallGraph& w);

// Within each component, all wall edges over the same underlying edge carry
// the same minus_count and the same plus_count.
bool check_propdil(const WallGraph& w);

// Connected components, each sorted, ordered by smallest vertex id.
std::vector<std::vector<std::size_t>> components(const WallGraph& w);

nlohmann::json to_json(const std::vector<PathStep>& path);
nlohmann::json to_json(const UndilatedResult& r);

// ---------------------------------------------------------------------------
// Compressed form: copy counts per (wall class, vertex) instead of explicit
// copies. Each class is a subgraph Omega_s whose copies share an element per
// vertex; a class edge stands for all wall edges of that class over one
// underlying edge, paired by the canonical grid.

struct ClassNode {
  std::size_t wall_class = 0;
  std::string vertex;
  LatticeVector element;
  Int count;  // N_s(v) >= 1

  friend bool operator==(const ClassNode&, const ClassNode&) = default;
};

struct ClassEdge {
  std::size_t wall_class = 0;
  std::string edge;
  std::string minus_vertex;
  std::string plus_vertex;
  Int minus_count;  // per-copy intersection count at the minus end (k)
  Int plus_count;   // per-copy intersection count at the plus end (l)

  bool has_walls() const { return minus_count > 0 && plus_count > 0; }

  friend bool operator==(const ClassEdge&, const ClassEdge&) = default;
};

class CompressedWallGraph {
 public:
  CompressedWallGraph() = default;
  // Throws InputError unless N(minus) * k == N(plus) * l for every class edge
  // and every class edge has both end nodes.
  CompressedWallGraph(std::vector<ClassNode> nodes, std::vector<ClassEdge> edges);

  const std::vector<ClassNode>& nodes() const { return nodes_; }
  const std::vector<ClassEdge>& edges() const { return edges_; }

  // Index into nodes() of (wall_class, vertex); throws if absent.
  std::size_t node_index(std::size_t wall_class, const std::string& vertex) const;

  Int wall_vertex_count() const;
  Int wall_edge_count() const;

  friend bool operator==(const CompressedWallGraph& a, const CompressedWallGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<ClassNode> nodes_;
  std::vector<ClassEdge> edges_;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index_;
};

nlohmann::json to_json(const CompressedWallGraph& c);

// Explicit wall graph with canonical grid pairings. Throws LimitExceeded when
// either the wall vertex or the wall edge count would pass `limit`.
WallGraph expand(const CompressedWallGraph& c, std::size_t limit = kDefaultExpandLimit);

// Class-graph versions of the checks: one node per (class, vertex), one edge
// per class edge carrying intersection points. Every closed path of the
// explicit graph projects to a closed walk here with the same dilation.
struct ClassUndilatedResult {
  bool ok = true;
  std::optional<std::vector<PathStep>> cycle;  // steps index class edges
  std::optional<Rational> dilation;
};

ClassUndilatedResult check_undilated(const CompressedWallGraph& c);
bool check_propdil(const CompressedWallGraph& c);

}  // namespace tubular
