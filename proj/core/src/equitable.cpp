#include "tubular/equitable.hpp"

#include <algorithm>
#include <set>

#include "tubular/error.hpp"

namespace tubular {

void EquitableSet::add(const std::string& vertex, const LatticeVector& curve, const Int& count) {
  if (count <= 0) throw InputError("vertex \"" + vertex + "\": count must be positive");
  auto [primitive, multiplicity] = primitive_decompose(curve);
  auto& list = entries_[vertex];
  auto it = std::find_if(list.begin(), list.end(),
                         [&](const EquitableEntry& e) { return e.element == primitive; });
  if (it != list.end()) {
    it->count += multiplicity * count;
  } else {
    list.push_back({std::move(primitive), multiplicity * count});
  }
}

void EquitableSet::add_raw(const std::string& vertex, EquitableEntry entry) {
  entries_[vertex].push_back(std::move(entry));
}

const EquitableSet::EntryList& EquitableSet::at(std::string_view vertex) const {
  auto it = entries_.find(vertex);
  if (it == entries_.end())
    throw InputError("equitable set does not cover vertex \"" + std::string(vertex) + "\"");
  return it->second;
}

EquitableSet EquitableSet::scaled(const Int& factor) const {
  if (factor <= 0) throw InputError("scale factor must be positive");
  EquitableSet out = *this;
  for (auto& [v, list] : out.entries_)
    for (auto& e : list) e.count *= factor;
  return out;
}

EquitableSet EquitableSet::normalized() const {
  EquitableSet out;
  for (const auto& [v, list] : entries_) {
    out.ensure_vertex(v);
    for (const auto& e : list) out.add(v, e.element, e.count);
    auto& mine = out.entries_[v];
    std::sort(mine.begin(), mine.end(),
              [](const EquitableEntry& a, const EquitableEntry& b) { return a.element < b.element; });
  }
  return out;
}

nlohmann::json to_json(const EquitableSet& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, list] : s.entries()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : list)
      arr.push_back({{"element", to_json(e.element)}, {"count", int_to_json_string(e.count)}});
    j[v] = std::move(arr);
  }
  return j;
}

EquitableSet equitable_set_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("equitable set: expected a JSON object");
  EquitableSet s;
  for (const auto& [v, arr] : j.items()) {
    if (!arr.is_array()) throw InputError("equitable set[\"" + v + "\"]: expected an array");
    s.ensure_vertex(v);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "equitable set[\"" + v + "\"][" + std::to_string(i) + "]";
      const auto& je = arr[i];
      if (!je.is_object() || !je.contains("element") || !je.contains("count"))
        throw InputError(where + ": expected {\"element\": [x,y], \"count\": \"n\"}");
      s.add_raw(v, {vector_from_json(je["element"], where + ".element"),
                    int_from_json(je["count"], where + ".count")});
    }
  }
  return s;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"object", v.object}, {"message", v.message}});
  return {{"ok", r.ok}, {"violations", std::move(violations)}};
}

Int edge_end_sum(const TubularGraph& g, const EquitableSet& s, std::string_view edge,
                 EdgeEnd end) {
  const auto& e = g.edge(edge);
  const auto& z = e.inclusion(end);
  Int total = 0;
  for (const auto& entry : s.at(e.vertex(end)))
    total += entry.count * intersection_number(entry.element, z);
  return total;
}

namespace {

void require_coverage(const TubularGraph& g, const EquitableSet& s) {
  for (const auto& v : g.vertices()) s.at(v);
}

}  // namespace

CheckReport verify_equitable(const TubularGraph& g, const EquitableSet& s) {
  require_coverage(g, s);
  CheckReport report;
  for (const auto& v : g.vertices()) {
    std::set<LatticeVector> classes;
    for (const auto& entry : s.at(v)) {
      if (entry.element.is_zero()) {
        report.fail(v, "zero element in equitable set");
        continue;
      }
      classes.insert(canonical_class(entry.element));
    }
    if (classes.size() < 2)
      report.fail(v, "elements are all parallel (" + std::to_string(classes.size()) +
                         " parallelism class)");
  }
  for (const auto& e : g.edges()) {
    Int minus = edge_end_sum(g, s, e.id, EdgeEnd::Minus);
    Int plus = edge_end_sum(g, s, e.id, EdgeEnd::Plus);
    if (minus != plus)
      report.fail(e.id, "unbalanced intersection sums: minus end " + minus.str() +
                            ", plus end " + plus.str());
  }
  return report;
}

CheckReport verify_fortified(const TubularGraph& g, const EquitableSet& s) {
  require_coverage(g, s);
  CheckReport report;
  for (const auto& e : g.edges()) {
    for (EdgeEnd end : {EdgeEnd::Minus, EdgeEnd::Plus}) {
      const auto& z = e.inclusion(end);
      const auto& list = s.at(e.vertex(end));
      bool hit = std::any_of(list.begin(), list.end(), [&](const EquitableEntry& entry) {
        return !entry.element.is_zero() && intersection_number(entry.element, z) == 0;
      });
      if (!hit)
        report.fail(e.id, std::string(to_string(end)) + " end: no element at vertex \"" +
                              e.vertex(end) + "\" is parallel to inclusion " + to_string(z));
    }
  }
  return report;
}

CheckReport verify_primitive(const EquitableSet& s) {
  CheckReport report;
  for (const auto& [v, list] : s.entries()) {
    if (list.empty()) report.fail(v, "no entries at vertex");
    std::set<LatticeVector> seen;
    for (const auto& entry : list) {
      if (entry.count <= 0)
        report.fail(v, "non-positive count " + entry.count.str() + " for " +
                           to_string(entry.element));
      if (entry.element.is_zero()) {
        report.fail(v, "zero element");
        continue;
      }
      auto [primitive, multiplicity] = primitive_decompose(entry.element);
      if (!is_canonical_primitive(entry.element)) {
        report.fail(v, "element " + to_string(entry.element) + " is not a canonical primitive;"
                           " replace with " + to_string(primitive) + " x" +
                           Int(multiplicity * entry.count).str());
      }
      if (!seen.insert(primitive).second)
        report.fail(v, "parallelism class " + to_string(primitive) + " appears twice");
    }
  }
  return report;
}

}  // namespace tubular
