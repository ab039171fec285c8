#include "tubular/treebuild.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tubular {

std::vector<LatticeVector> filler_sequence(std::size_t count) {
  std::vector<LatticeVector> out;
  for (long h = 1; out.size() < count; ++h) {
    for (long x = h; x >= 0 && out.size() < count; --x) {
      LatticeVector v{x, h - x};
      if (is_primitive(v)) out.push_back(v);
    }
    for (long x = h - 1; x >= 1 && out.size() < count; --x) {
      LatticeVector v{x, -(h - x)};
      if (is_primitive(v)) out.push_back(v);
    }
  }
  return out;
}

namespace {

// The next filler not parallel to anything in `list`.
LatticeVector next_filler(const std::vector<LatticeVector>& list) {
  for (std::size_t n = 1;; n *= 2) {
    for (const auto& f : filler_sequence(n + list.size())) {
      bool clash = std::any_of(list.begin(), list.end(),
                               [&](const LatticeVector& x) { return is_parallel(x, f); });
      if (!clash) return f;
    }
  }
}

std::size_t unique_zero(const std::vector<Int>& counts, const std::string& where) {
  std::optional<std::size_t> zero;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] != 0) continue;
    if (zero) throw InternalError(where + ": two classes parallel to one edge inclusion");
    zero = s;
  }
  if (!zero) throw InternalError(where + ": no class parallel to the edge inclusion");
  return *zero;
}

}  // namespace

TreeConstruction construct_tree_walls(const TubularGraph& g) {
  if (!g.is_tree()) throw InputError("underlying graph is not a tree");

  ConstructionTrace trace;
  std::map<std::string, std::vector<LatticeVector>> lists;
  for (const auto& v : g.vertices()) {
    auto classes = parallelism_classes(g, v);
    trace.local_classes[v] = classes.size();
    trace.max_local_classes = std::max(trace.max_local_classes, classes.size());
    lists[v] = std::move(classes);
  }
  trace.m = std::max<std::size_t>(2, trace.max_local_classes);
  const std::size_t m = trace.m;
  for (auto& [v, list] : lists) {
    while (list.size() < m) list.push_back(next_filler(list));
  }

  // Most classes first, then the smallest id.
  trace.base_vertex = g.vertices().front();
  for (const auto& v : g.vertices()) {
    const auto& best = trace.base_vertex;
    if (trace.local_classes[v] > trace.local_classes[best] ||
        (trace.local_classes[v] == trace.local_classes[best] && v < best))
      trace.base_vertex = v;
  }

  // counts[s][v] and the class component each vertex sits in.
  std::vector<std::map<std::string, Int>> counts(m);
  std::vector<std::map<std::string, std::size_t>> component_of(m);
  std::vector<std::vector<std::vector<std::string>>> members(m);
  std::vector<ClassEdge> class_edges;

  const std::string& base = trace.base_vertex;
  trace.elements[base] = lists[base];
  for (std::size_t s = 0; s < m; ++s) {
    counts[s][base] = 1;
    component_of[s][base] = 0;
    members[s].push_back({base});
  }

  std::set<std::string> placed{base};
  std::deque<std::string> queue{base};
  while (!queue.empty()) {
    std::string parent = queue.front();
    queue.pop_front();
    trace.order.push_back(parent);

    std::vector<const TubularEdge*> incident;
    for (std::size_t i : g.incident_edges(parent)) incident.push_back(&g.edges()[i]);
    std::sort(incident.begin(), incident.end(),
              [](const TubularEdge* a, const TubularEdge* b) { return a->id < b->id; });

    for (const TubularEdge* e : incident) {
      const EdgeEnd parent_end = e->minus == parent ? EdgeEnd::Minus : EdgeEnd::Plus;
      const EdgeEnd child_end = parent_end == EdgeEnd::Minus ? EdgeEnd::Plus : EdgeEnd::Minus;
      const std::string& child = e->vertex(child_end);
      if (placed.contains(child)) continue;
      placed.insert(child);
      queue.push_back(child);

      TraceEdge te;
      te.edge = e->id;
      te.parent = parent;
      te.child = child;
      te.parent_end = parent_end;

      const auto& parent_list = trace.elements[parent];
      const auto& z_parent = e->inclusion(parent_end);
      const auto& z_child = e->inclusion(child_end);
      for (const auto& x : parent_list) te.parent_counts.push_back(intersection_number(x, z_parent));
      te.zero_class = unique_zero(te.parent_counts, "edge \"" + e->id + "\" parent end");

      // Move the child's element parallel to e into the parent's zero slot.
      const auto& raw = lists[child];
      std::vector<Int> raw_counts;
      for (const auto& x : raw) raw_counts.push_back(intersection_number(x, z_child));
      const std::size_t child_zero = unique_zero(raw_counts, "edge \"" + e->id + "\" child end");
      te.placement.resize(m);
      for (std::size_t s = 0; s < m; ++s) te.placement[s] = s;
      std::swap(te.placement[te.zero_class], te.placement[child_zero]);

      auto& child_list = trace.elements[child];
      for (std::size_t s = 0; s < m; ++s) {
        child_list.push_back(raw[te.placement[s]]);
        te.child_counts.push_back(raw_counts[te.placement[s]]);
      }

      for (std::size_t s = 0; s < m; ++s) {
        const Int& k = te.parent_counts[s];
        const Int& l = te.child_counts[s];
        if (s == te.zero_class) {
          // No intersection points across e: a single isolated copy.
          counts[s][child] = 1;
          component_of[s][child] = members[s].size();
          members[s].push_back({child});
        } else {
          const std::size_t comp = component_of[s][parent];
          Int old_parent = counts[s][parent];
          for (const auto& u : members[s][comp]) counts[s][u] *= l;
          trace.multiplications.push_back({e->id, s, l, members[s][comp]});
          counts[s][child] = old_parent * k;
          component_of[s][child] = comp;
          members[s][comp].push_back(child);
        }
        const bool minus_is_parent = parent_end == EdgeEnd::Minus;
        class_edges.push_back({s, e->id, e->minus, e->plus, minus_is_parent ? k : l,
                               minus_is_parent ? l : k});
      }
      trace.edges.push_back(std::move(te));
    }
  }

  std::vector<ClassNode> nodes;
  EquitableSet set;
  for (const auto& v : g.vertices()) {
    const auto& list = trace.elements.at(v);
    for (std::size_t s = 0; s < m; ++s) {
      nodes.push_back({s, v, list[s], counts[s].at(v)});
      set.add(v, list[s], counts[s].at(v));
    }
  }
  return {std::move(set), CompressedWallGraph(std::move(nodes), std::move(class_edges)),
          std::move(trace)};
}

nlohmann::json to_json(const ConstructionTrace& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges) {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t s = 0; s < e.parent_counts.size(); ++s) {
      classes.push_back({{"class", s},
                         {"k", int_to_json(e.parent_counts[s])},
                         {"l", int_to_json(e.child_counts[s])}});
    }
    edges.push_back({{"edge", e.edge},
                     {"parent", e.parent},
                     {"child", e.child},
                     {"parent_end", std::string(to_string(e.parent_end))},
                     {"zero_class", e.zero_class},
                     {"placement", e.placement},
                     {"classes", std::move(classes)}});
  }
  nlohmann::json mults = nlohmann::json::array();
  for (const auto& step : t.multiplications) {
    mults.push_back({{"edge", step.edge},
                     {"class", step.wall_class},
                     {"factor", int_to_json_string(step.factor)},
                     {"component", step.component}});
  }
  nlohmann::json elements = nlohmann::json::object();
  for (const auto& [v, list] : t.elements) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : list) arr.push_back(to_json(x));
    elements[v] = std::move(arr);
  }
  return {{"base_vertex", t.base_vertex},
          {"m", t.m},
          {"max_local_classes", t.max_local_classes},
          {"order", t.order},
          {"local_classes", t.local_classes},
          {"elements", std::move(elements)},
          {"edges", std::move(edges)},
          {"multiplications", std::move(mults)}};
}

Certificate certify_virtually_special(const TubularGraph& g, std::size_t expand_limit) {
  Certificate cert;
  cert.graph_hash = graph_hash(g);
  cert.construction = construct_tree_walls(g);
  const auto& set = cert.construction.set;
  const auto& walls = cert.construction.walls;

  auto collect = [&](const char* name, const CheckReport& r) {
    for (const auto& v : r.violations)
      cert.problems.push_back(std::string(name) + ": " + v.object + ": " + v.message);
    return r.ok;
  };
  cert.equitable = collect("equitable", verify_equitable(g, set));
  cert.fortified = collect("fortified", verify_fortified(g, set));
  cert.primitive = collect("primitive", verify_primitive(set));

  cert.wall_vertices = walls.wall_vertex_count();
  cert.wall_edges = walls.wall_edge_count();

  const bool class_propdil = check_propdil(walls);
  const auto class_undilated = check_undilated(walls);
  if (!class_undilated.ok) cert.problems.push_back("undilated: class graph has a dilated cycle");

  const Int limit(expand_limit);
  if (cert.wall_vertices <= limit && cert.wall_edges <= limit) {
    cert.check_level = "explicit";
    WallGraph w = expand(walls, expand_limit);
    bool valid = collect("walls", validate_walls(w, g, &set));
    cert.propdil = valid && check_propdil(w);
    auto undilated = check_undilated(w);
    cert.undilated = valid && undilated.ok;
    if (!undilated.ok) cert.problems.push_back("undilated: explicit wall graph has a dilated cycle");
    cert.class_graph_agrees = (check_propdil(w) == class_propdil) && (undilated.ok == class_undilated.ok);
  } else {
    cert.check_level = "class-graph";
    cert.propdil = class_propdil;
    cert.undilated = class_undilated.ok;
  }
  if (!cert.propdil) cert.problems.push_back("propdil: wall edges over one edge disagree in a component");
  return cert;
}

nlohmann::json to_json(const Certificate& c) {
  const auto& con = c.construction;
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& node : con.walls.nodes()) {
    vertices.push_back({{"vertex", node.vertex},
                        {"class", node.wall_class},
                        {"element", to_json(node.element)},
                        {"count", int_to_json_string(node.count)}});
  }
  nlohmann::json out = {
      {"status", c.all_passed() ? "certified" : "internal-error"},
      {"graph_hash", c.graph_hash},
      {"m", con.trace.m},
      {"base_vertex", con.trace.base_vertex},
      {"three_class_hypothesis_used", con.trace.max_local_classes >= 3},
      {"equitable", c.equitable},
      {"fortified", c.fortified},
      {"primitive", c.primitive},
      {"propdil", c.propdil},
      {"undilated", c.undilated},
      {"witness", nullptr},
      {"check_level", c.check_level},
      {"wall_vertices", int_to_json_string(c.wall_vertices)},
      {"wall_edges", int_to_json_string(c.wall_edges)},
      {"class_nodes", std::move(vertices)},
      {"equitable_set", to_json(con.set)},
      {"walls", to_json(con.walls)},
      {"trace", to_json(con.trace)},
      {"problems", c.problems},
  };
  out["class_graph_agrees"] =
      c.class_graph_agrees ? nlohmann::json(*c.class_graph_agrees) : nlohmann::json(nullptr);
  out["consequences"] = c.all_passed()
                            ? nlohmann::json::array({"virtually special", "linear over Z"})
                            : nlohmann::json::array();
  return out;
}

}  // namespace tubular
