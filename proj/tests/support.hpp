#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"
#include "tubular/words.hpp"

namespace tubular {

inline void PrintTo(const LatticeVector& v, std::ostream* os) { *os << to_string(v); }
inline void PrintTo(const GroupWord& w, std::ostream* os) { *os << format_word(w); }

}  // namespace tubular

namespace tubular::test {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(TUBULAR_FIXTURE_DIR) / rel;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TubularGraph fixture_graph(const std::string& name) {
  return parse_graph(slurp(fixture("graphs/" + name + ".json")));
}

// Nonzero integer in [-r, r].
inline long nonzero(std::mt19937_64& rng, long r) {
  std::uniform_int_distribution<long> d(1, r);
  std::bernoulli_distribution sign(0.5);
  return sign(rng) ? d(rng) : -d(rng);
}

// Nonzero vector with entries in [-r, r]; with nonzero_entries both entries
// avoid 0.
inline LatticeVector random_vector(std::mt19937_64& rng, long r, bool nonzero_entries) {
  if (nonzero_entries) return {nonzero(rng, r), nonzero(rng, r)};
  std::uniform_int_distribution<long> d(-r, r);
  for (;;) {
    LatticeVector v{d(rng), d(rng)};
    if (!v.is_zero()) return v;
  }
}

// Random tree on n vertices (random parent for each vertex after the first,
// random edge orientation).
inline TubularGraph random_tree(std::mt19937_64& rng, std::size_t n, long r,
                                bool nonzero_entries = true) {
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<TubularEdge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    std::string a = vertices[parent(rng)];
    std::string b = vertices[i];
    if (std::bernoulli_distribution(0.5)(rng)) std::swap(a, b);
    edges.push_back({"e" + std::to_string(i - 1), a, b, random_vector(rng, r, nonzero_entries),
                     random_vector(rng, r, nonzero_entries)});
  }
  std::shuffle(vertices.begin(), vertices.end(), rng);
  return TubularGraph(vertices, edges);
}

}  // namespace tubular::test
