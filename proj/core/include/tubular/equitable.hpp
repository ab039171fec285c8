#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"

namespace tubular {

struct EquitableEntry {
  LatticeVector element;
  Int count;

  friend bool operator==(const EquitableEntry&, const EquitableEntry&) = default;
};

// Per vertex, a multiset of curves stored as (element, count) entries.
//
// add() normalizes on ingestion: a non-primitive curve n*(a,b) becomes n
// parallel copies of the canonical primitive (a,b), merged with any entry of
// the same class. Deserialized sets keep whatever the document said so that
// verify_primitive can report it.
class EquitableSet {
 public:
  using EntryList = std::vector<EquitableEntry>;

  void add(const std::string& vertex, const LatticeVector& curve, const Int& count = 1);
  // Stores the entry verbatim. Used by deserialization and tests.
  void add_raw(const std::string& vertex, EquitableEntry entry);
  // Marks a vertex as present even with no entries.
  void ensure_vertex(const std::string& vertex) { entries_[vertex]; }

  bool covers(std::string_view vertex) const { return entries_.contains(vertex); }
  const EntryList& at(std::string_view vertex) const;  // throws on missing coverage
  const std::map<std::string, EntryList, std::less<>>& entries() const { return entries_; }

  // Every count multiplied by factor (> 0).
  EquitableSet scaled(const Int& factor) const;
  // Re-ingests every entry through add(), entries sorted by element.
  EquitableSet normalized() const;

  friend bool operator==(const EquitableSet&, const EquitableSet&) = default;

 private:
  std::map<std::string, EntryList, std::less<>> entries_;
};

nlohmann::json to_json(const EquitableSet& s);
EquitableSet equitable_set_from_json(const nlohmann::json& j);

struct Violation {
  std::string object;  // offending edge or vertex id
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<Violation> violations;

  void fail(std::string object, std::string message) {
    ok = false;
    violations.push_back({std::move(object), std::move(message)});
  }
};

nlohmann::json to_json(const CheckReport& r);

// Sum over entries (c, n) at the end's vertex of n * #[c, z_end].
Int edge_end_sum(const TubularGraph& g, const EquitableSet& s, std::string_view edge, EdgeEnd end);

// Balanced sums across every edge and at least two parallelism classes at
// every vertex. Throws InputError if s does not cover a vertex of g.
CheckReport verify_equitable(const TubularGraph& g, const EquitableSet& s);

// Every edge inclusion has, at its vertex, an element meeting it zero times.
// For torus curves this is the same as being parallel to some element.
CheckReport verify_fortified(const TubularGraph& g, const EquitableSet& s);

// Every stored element is a canonical primitive with a positive count, no
// vertex is empty and no class repeats. Violations carry a repair hint.
CheckReport verify_primitive(const EquitableSet& s);

}  // namespace tubular
