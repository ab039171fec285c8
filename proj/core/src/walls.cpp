#include "tubular/walls.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace tubular {

namespace {

std::size_t to_size(const Int& n) { return n.convert_to<std::size_t>(); }

void check_limit(const char* what, const Int& required, std::size_t limit) {
  if (required > Int(limit)) throw LimitExceeded(what, required, limit);
}

// Minimal view of a multigraph whose edges carry a ratio num/den for forward
// traversal. Shared by the explicit and class-graph checks.
struct RatioGraph {
  std::size_t node_count = 0;
  std::vector<std::size_t> from;
  std::vector<std::size_t> to;
  std::vector<const Int*> num;
  std::vector<const Int*> den;

  std::size_t edge_count() const { return from.size(); }
};

struct PotentialResult {
  std::optional<std::size_t> failing_edge;
  std::vector<std::size_t> parent_edge;  // npos at roots
  std::vector<std::size_t> depth;
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// CSR adjacency in edge-id order.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> edge;

  explicit Adjacency(const RatioGraph& g) : offset(g.node_count + 1, 0) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      ++offset[g.from[e] + 1];
      if (g.to[e] != g.from[e]) ++offset[g.to[e] + 1];
    }
    for (std::size_t i = 0; i < g.node_count; ++i) offset[i + 1] += offset[i];
    edge.resize(offset.back());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      edge[fill[g.from[e]]++] = e;
      if (g.to[e] != g.from[e]) edge[fill[g.to[e]]++] = e;
    }
  }
};

PotentialResult potential_check(const RatioGraph& g) {
  PotentialResult out;
  out.parent_edge.assign(g.node_count, npos);
  out.depth.assign(g.node_count, 0);
  std::vector<Rational> potential(g.node_count);
  std::vector<char> visited(g.node_count, 0);
  std::vector<char> tree_edge(g.edge_count(), 0);
  Adjacency adj(g);

  std::deque<std::size_t> queue;
  for (std::size_t root = 0; root < g.node_count; ++root) {
    if (visited[root]) continue;
    visited[root] = 1;
    potential[root] = 1;
    queue.push_back(root);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k) {
        std::size_t e = adj.edge[k];
        std::size_t v = g.from[e] == u ? g.to[e] : g.from[e];
        if (visited[v]) continue;
        visited[v] = 1;
        tree_edge[e] = 1;
        out.parent_edge[v] = e;
        out.depth[v] = out.depth[u] + 1;
        if (g.from[e] == u) {
          potential[v] = potential[u] * Rational(*g.num[e], *g.den[e]);
        } else {
          potential[v] = potential[u] * Rational(*g.den[e], *g.num[e]);
        }
        queue.push_back(v);
      }
    }
  }

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    // pot(to) must equal pot(from) * num / den.
    if (potential[g.to[e]] * *g.den[e] != potential[g.from[e]] * *g.num[e]) {
      out.failing_edge = e;
      break;
    }
  }
  return out;
}

// Closed path: tree path from(e) -> to(e), then e traversed backwards.
std::vector<PathStep> fundamental_cycle(const RatioGraph& g, const PotentialResult& p,
                                        std::size_t e) {
  auto step_from = [&](std::size_t edge, std::size_t at) {
    return PathStep{edge, g.from[edge] == at};
  };
  auto parent_of = [&](std::size_t v) {
    std::size_t pe = p.parent_edge[v];
    return g.from[pe] == v ? g.to[pe] : g.from[pe];
  };

  std::size_t a = g.from[e];
  std::size_t b = g.to[e];
  std::vector<PathStep> up;    // from a towards the common ancestor
  std::vector<PathStep> down;  // from b towards the common ancestor, reversed later
  while (a != b) {
    if (p.depth[a] >= p.depth[b]) {
      up.push_back(step_from(p.parent_edge[a], a));
      a = parent_of(a);
    } else {
      std::size_t parent = parent_of(b);
      down.push_back(step_from(p.parent_edge[b], parent));
      b = parent;
    }
  }
  std::vector<PathStep> cycle = std::move(up);
  cycle.insert(cycle.end(), down.rbegin(), down.rend());
  cycle.push_back(PathStep{e, false});
  return cycle;
}

Rational ratio_product(const RatioGraph& g, const std::vector<PathStep>& path) {
  Rational value = 1;
  for (const auto& step : path) {
    if (step.forward) {
      value *= Rational(*g.num[step.edge], *g.den[step.edge]);
    } else {
      value *= Rational(*g.den[step.edge], *g.num[step.edge]);
    }
  }
  return value;
}

RatioGraph ratio_graph(const WallGraph& w) {
  RatioGraph g;
  g.node_count = w.vertices().size();
  for (const auto& e : w.edges()) {
    g.from.push_back(e.from);
    g.to.push_back(e.to);
    g.num.push_back(&e.minus_count);
    g.den.push_back(&e.plus_count);
  }
  return g;
}

std::vector<std::size_t> component_labels(std::size_t n, const std::vector<std::size_t>& from,
                                          const std::vector<std::size_t>& to) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < from.size(); ++e) {
    std::size_t a = find(from[e]);
    std::size_t b = find(to[e]);
    if (a == b) continue;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // smaller id becomes the representative
  }
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = find(i);
  return label;
}

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::size_t size_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw InputError(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string string_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw InputError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

// ---------------------------------------------------------------------------

WallGraph::WallGraph(std::vector<WallVertex> vertices, std::vector<WallEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id != i)
      throw InputError("wall vertices[" + std::to_string(i) + "]: id " +
                       std::to_string(vertices_[i].id) + " is not its position");
    if (vertices_[i].element.is_zero())
      throw InputError("wall vertex " + std::to_string(i) + ": zero element");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const std::string where = "wall edge " + std::to_string(i);
    if (e.id != i)
      throw InputError("wall edges[" + std::to_string(i) + "]: id " + std::to_string(e.id) +
                       " is not its position");
    if (e.from >= vertices_.size() || e.to >= vertices_.size())
      throw InputError(where + ": endpoint out of range");
    if (e.minus_count <= 0 || e.plus_count <= 0)
      throw InputError(where + ": intersection counts must be positive");
  }
}

nlohmann::json to_json(const WallGraph& w) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : w.vertices())
    vertices.push_back({{"id", v.id}, {"over", v.over}, {"element", to_json(v.element)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : w.edges()) {
    edges.push_back({{"id", e.id},
                     {"over", e.over},
                     {"from", e.from},
                     {"to", e.to},
                     {"minus_count", int_to_json(e.minus_count)},
                     {"plus_count", int_to_json(e.plus_count)}});
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

WallGraph wall_graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("wall graph: expected a JSON object");
  const auto& jv = field(j, "vertices", "wall graph");
  const auto& je = field(j, "edges", "wall graph");
  if (!jv.is_array() || !je.is_array())
    throw InputError("wall graph: vertices and edges must be arrays");
  std::vector<WallVertex> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string where = "wall vertices[" + std::to_string(i) + "]";
    vertices.push_back({size_field(jv[i], "id", where), string_field(jv[i], "over", where),
                        vector_from_json(field(jv[i], "element", where), where + ".element")});
  }
  std::vector<WallEdge> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string where = "wall edges[" + std::to_string(i) + "]";
    edges.push_back({size_field(je[i], "id", where), string_field(je[i], "over", where),
                     size_field(je[i], "from", where), size_field(je[i], "to", where),
                     int_from_json(field(je[i], "minus_count", where), where + ".minus_count"),
                     int_from_json(field(je[i], "plus_count", where), where + ".plus_count")});
  }
  return WallGraph(std::move(vertices), std::move(edges));
}

CheckReport validate_walls(const WallGraph& w, const TubularGraph& g, const EquitableSet* s) {
  CheckReport report;
  for (const auto& v : w.vertices()) {
    if (!g.has_vertex(v.over))
      report.fail("wall vertex " + std::to_string(v.id), "lies over unknown vertex \"" + v.over + "\"");
  }
  std::unordered_map<std::string, Int> per_edge;
  for (const auto& e : w.edges()) {
    const std::string id = "wall edge " + std::to_string(e.id);
    if (!g.has_edge(e.over)) {
      report.fail(id, "lies over unknown edge \"" + e.over + "\"");
      continue;
    }
    const auto& ge = g.edge(e.over);
    const auto& from = w.vertices()[e.from];
    const auto& to = w.vertices()[e.to];
    if (from.over != ge.minus || to.over != ge.plus) {
      report.fail(id, "endpoints lie over \"" + from.over + "\" -> \"" + to.over +
                          "\" but edge \"" + ge.id + "\" runs \"" + ge.minus + "\" -> \"" +
                          ge.plus + "\"");
      continue;
    }
    if (intersection_number(from.element, ge.z_minus) != e.minus_count)
      report.fail(id, "minus_count " + e.minus_count.str() + " differs from #[" +
                          to_string(from.element) + "," + to_string(ge.z_minus) + "]");
    if (intersection_number(to.element, ge.z_plus) != e.plus_count)
      report.fail(id, "plus_count " + e.plus_count.str() + " differs from #[" +
                          to_string(to.element) + "," + to_string(ge.z_plus) + "]");
    per_edge[e.over] += 1;
  }
  if (s != nullptr) {
    for (const auto& ge : g.edges()) {
      Int expected = edge_end_sum(g, *s, ge.id, EdgeEnd::Minus);
      Int actual = per_edge.contains(ge.id) ? per_edge[ge.id] : Int(0);
      if (expected != actual)
        report.fail(ge.id, "has " + actual.str() + " wall edges but " + expected.str() +
                               " intersection points per side");
    }
  }
  return report;
}

WallGraph build_walls(const TubularGraph& g, const EquitableSet& s, std::size_t limit) {
  const EquitableSet set = s.normalized();
  for (const auto& [v, list] : set.entries()) {
    if (!g.has_vertex(v))
      throw InputError("equitable set mentions unknown vertex \"" + v + "\"");
  }
  auto report = verify_equitable(g, set);
  if (!report.ok) {
    const auto& first = report.violations.front();
    throw InputError("equitable set is not equitable: " + first.object + ": " + first.message);
  }

  Int vertex_total = 0;
  for (const auto& v : g.vertices())
    for (const auto& entry : set.at(v)) vertex_total += entry.count;
  check_limit("wall vertices", vertex_total, limit);
  Int edge_total = 0;
  for (const auto& e : g.edges()) edge_total += edge_end_sum(g, set, e.id, EdgeEnd::Minus);
  check_limit("wall edges", edge_total, limit);

  // First wall vertex id of each entry, per underlying vertex.
  std::vector<WallVertex> vertices;
  std::unordered_map<std::string, std::vector<std::size_t>> first_copy;
  for (const auto& v : g.vertices()) {
    auto& firsts = first_copy[v];
    for (const auto& entry : set.at(v)) {
      firsts.push_back(vertices.size());
      for (std::size_t c = 0, n = to_size(entry.count); c < n; ++c)
        vertices.push_back({vertices.size(), v, entry.element});
    }
  }

  auto points = [&](const std::string& v, const LatticeVector& z) {
    std::vector<std::pair<std::size_t, Int>> out;  // (wall vertex, count)
    const auto& list = set.at(v);
    const auto& firsts = first_copy[v];
    for (std::size_t i = 0; i < list.size(); ++i) {
      Int k = intersection_number(list[i].element, z);
      if (k == 0) continue;
      std::size_t copies = to_size(list[i].count);
      std::size_t per_copy = to_size(k);
      for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t p = 0; p < per_copy; ++p) out.emplace_back(firsts[i] + c, k);
    }
    return out;
  };

  std::vector<WallEdge> edges;
  for (const auto& e : g.edges()) {
    auto minus = points(e.minus, e.z_minus);
    auto plus = points(e.plus, e.z_plus);
    if (minus.size() != plus.size())
      throw InternalError("edge \"" + e.id + "\": intersection point counts differ");
    for (std::size_t i = 0; i < minus.size(); ++i)
      edges.push_back(
          {edges.size(), e.id, minus[i].first, plus[i].first, minus[i].second, plus[i].second});
  }
  return WallGraph(std::move(vertices), std::move(edges));
}

Rational dilation(const WallGraph& w, const std::vector<PathStep>& path) {
  Rational value = 1;
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& step = path[i];
    if (step.edge >= w.edges().size())
      throw InputError("path step " + std::to_string(i) + ": unknown wall edge " +
                       std::to_string(step.edge));
    const auto& e = w.edges()[step.edge];
    std::size_t start = step.forward ? e.from : e.to;
    std::size_t end = step.forward ? e.to : e.from;
    if (at && *at != start)
      throw InputError("path step " + std::to_string(i) + ": disconnected step (wall edge " +
                       std::to_string(e.id) + " does not start at wall vertex " +
                       std::to_string(*at) + ")");
    if (step.forward) {
      value *= Rational(e.minus_count, e.plus_count);
    } else {
      value *= Rational(e.plus_count, e.minus_count);
    }
    at = end;
  }
  return value;
}

UndilatedResult check_undilated(const WallGraph& w) {
  RatioGraph g = ratio_graph(w);
  PotentialResult p = potential_check(g);
  UndilatedResult out;
  if (!p.failing_edge) return out;
  out.ok = false;
  auto cycle = fundamental_cycle(g, p, *p.failing_edge);
  Rational d = dilation(w, cycle);
  out.witness = DilationWitness{std::move(cycle), std::move(d)};
  return out;
}

bool check_propdil(const WallGraph& w) {
  std::vector<std::size_t> from, to;
  for (const auto& e : w.edges()) {
    from.push_back(e.from);
    to.push_back(e.to);
  }
  auto label = component_labels(w.vertices().size(), from, to);
  std::unordered_map<std::string, std::uint64_t> edge_key;
  for (const auto& e : w.edges()) edge_key.emplace(e.over, edge_key.size());
  const std::uint64_t stride = edge_key.size();
  // Keyed by (component, underlying edge).
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  for (std::size_t i = 0; i < w.edges().size(); ++i) {
    const auto& e = w.edges()[i];
    std::uint64_t key = static_cast<std::uint64_t>(label[e.from]) * stride + edge_key[e.over];
    auto [seen, inserted] = first_seen.emplace(key, i);
    if (inserted) continue;
    const auto& ref = w.edges()[seen->second];
    if (ref.minus_count != e.minus_count || ref.plus_count != e.plus_count) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> components(const WallGraph& w) {
  std::vector<std::size_t> from, to;
  for (const auto& e : w.edges()) {
    from.push_back(e.from);
    to.push_back(e.to);
  }
  auto label = component_labels(w.vertices().size(), from, to);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(w.vertices().size(), npos);
  for (std::size_t v = 0; v < label.size(); ++v) {
    std::size_t root = label[v];  // smallest id in the component, so root <= v
    if (slot[root] == npos) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(v);
  }
  return out;
}

nlohmann::json to_json(const std::vector<PathStep>& path) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : path)
    out.push_back({{"edge", s.edge}, {"direction", s.forward ? "forward" : "reverse"}});
  return out;
}

nlohmann::json to_json(const UndilatedResult& r) {
  nlohmann::json out = {{"ok", r.ok}};
  if (r.witness) {
    out["witness"] = {{"cycle", to_json(r.witness->cycle)},
                      {"dilation", to_string(r.witness->dilation)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

// ---------------------------------------------------------------------------

CompressedWallGraph::CompressedWallGraph(std::vector<ClassNode> nodes, std::vector<ClassEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    const std::string where = "class node (" + std::to_string(n.wall_class) + ", \"" + n.vertex + "\")";
    if (n.count <= 0) throw InputError(where + ": copy count must be positive");
    if (n.element.is_zero()) throw InputError(where + ": zero element");
    if (!index_.emplace(std::make_pair(n.wall_class, n.vertex), i).second)
      throw InputError(where + ": duplicate node");
  }
  for (const auto& e : edges_) {
    const std::string where = "class edge (" + std::to_string(e.wall_class) + ", \"" + e.edge + "\")";
    if (e.minus_count < 0 || e.plus_count < 0)
      throw InputError(where + ": negative intersection count");
    const auto& minus = nodes_[node_index(e.wall_class, e.minus_vertex)];
    const auto& plus = nodes_[node_index(e.wall_class, e.plus_vertex)];
    if (minus.count * e.minus_count != plus.count * e.plus_count)
      throw InputError(where + ": N(minus)*k = " + Int(minus.count * e.minus_count).str() +
                       " but N(plus)*l = " + Int(plus.count * e.plus_count).str());
  }
}

std::size_t CompressedWallGraph::node_index(std::size_t wall_class, const std::string& vertex) const {
  auto it = index_.find(std::make_pair(wall_class, vertex));
  if (it == index_.end())
    throw InputError("no class node (" + std::to_string(wall_class) + ", \"" + vertex + "\")");
  return it->second;
}

Int CompressedWallGraph::wall_vertex_count() const {
  Int total = 0;
  for (const auto& n : nodes_) total += n.count;
  return total;
}

Int CompressedWallGraph::wall_edge_count() const {
  Int total = 0;
  for (const auto& e : edges_) {
    if (!e.has_walls()) continue;
    total += nodes_[node_index(e.wall_class, e.minus_vertex)].count * e.minus_count;
  }
  return total;
}

nlohmann::json to_json(const CompressedWallGraph& c) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : c.nodes()) {
    nodes.push_back({{"class", n.wall_class},
                     {"vertex", n.vertex},
                     {"element", to_json(n.element)},
                     {"count", int_to_json_string(n.count)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.edges()) {
    edges.push_back({{"class", e.wall_class},
                     {"edge", e.edge},
                     {"minus", e.minus_vertex},
                     {"plus", e.plus_vertex},
                     {"k", int_to_json(e.minus_count)},
                     {"l", int_to_json(e.plus_count)},
                     {"pairing", "canonical-grid"}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

WallGraph expand(const CompressedWallGraph& c, std::size_t limit) {
  check_limit("wall vertices", c.wall_vertex_count(), limit);
  check_limit("wall edges", c.wall_edge_count(), limit);

  std::vector<WallVertex> vertices;
  std::vector<std::size_t> first_copy;
  for (const auto& n : c.nodes()) {
    first_copy.push_back(vertices.size());
    for (std::size_t k = 0, count = to_size(n.count); k < count; ++k)
      vertices.push_back({vertices.size(), n.vertex, n.element});
  }

  std::vector<WallEdge> edges;
  for (const auto& e : c.edges()) {
    if (!e.has_walls()) continue;
    std::size_t mi = c.node_index(e.wall_class, e.minus_vertex);
    std::size_t pi = c.node_index(e.wall_class, e.plus_vertex);
    std::size_t k = to_size(e.minus_count);
    std::size_t l = to_size(e.plus_count);
    std::size_t total = to_size(c.nodes()[mi].count) * k;
    // Point i on the minus side belongs to copy i / k; on the plus side to i / l.
    for (std::size_t i = 0; i < total; ++i) {
      edges.push_back({edges.size(), e.edge, first_copy[mi] + i / k, first_copy[pi] + i / l,
                       e.minus_count, e.plus_count});
    }
  }
  return WallGraph(std::move(vertices), std::move(edges));
}

namespace {

RatioGraph class_ratio_graph(const CompressedWallGraph& c, std::vector<std::size_t>& edge_map) {
  RatioGraph g;
  g.node_count = c.nodes().size();
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    const auto& e = c.edges()[i];
    if (!e.has_walls()) continue;
    edge_map.push_back(i);
    g.from.push_back(c.node_index(e.wall_class, e.minus_vertex));
    g.to.push_back(c.node_index(e.wall_class, e.plus_vertex));
    g.num.push_back(&e.minus_count);
    g.den.push_back(&e.plus_count);
  }
  return g;
}

}  // namespace

ClassUndilatedResult check_undilated(const CompressedWallGraph& c) {
  std::vector<std::size_t> edge_map;
  RatioGraph g = class_ratio_graph(c, edge_map);
  PotentialResult p = potential_check(g);
  ClassUndilatedResult out;
  if (!p.failing_edge) return out;
  out.ok = false;
  auto cycle = fundamental_cycle(g, p, *p.failing_edge);
  out.dilation = ratio_product(g, cycle);
  for (auto& step : cycle) step.edge = edge_map[step.edge];
  out.cycle = std::move(cycle);
  return out;
}

bool check_propdil(const CompressedWallGraph& c) {
  std::vector<std::size_t> edge_map;
  RatioGraph g = class_ratio_graph(c, edge_map);
  auto label = component_labels(g.node_count, g.from, g.to);
  std::map<std::pair<std::size_t, std::string>, std::size_t> first_seen;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = c.edges()[edge_map[i]];
    auto [it, fresh] = first_seen.emplace(std::make_pair(label[g.from[i]], e.edge), edge_map[i]);
    if (fresh) continue;
    const auto& ref = c.edges()[it->second];
    if (ref.minus_count != e.minus_count || ref.plus_count != e.plus_count) return false;
  }
  return true;
}

}  // namespace tubular
