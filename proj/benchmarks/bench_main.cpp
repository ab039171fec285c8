#include <fstream>
#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "tubular/gpq.hpp"
#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"
#include "tubular/treebuild.hpp"
#include "tubular/walls.hpp"
#include "tubular/words.hpp"

using namespace tubular;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(TUBULAR_FIXTURE_DIR) + "/" + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path of n vertices with inclusions (1,k) and (k,1) so the counts grow.
TubularGraph path_graph(std::size_t n, long k) {
  std::vector<std::string> vertices;
  std::vector<TubularEdge> edges;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.push_back({"e" + std::to_string(i), vertices[i], vertices[i + 1], {1, k}, {k, 1}});
  return TubularGraph(vertices, edges);
}

void BM_ConstructTreeWalls(benchmark::State& state) {
  auto g = path_graph(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(construct_tree_walls(g));
}
BENCHMARK(BM_ConstructTreeWalls)->Arg(2)->Arg(8)->Arg(32);

void BM_CertifyStar(benchmark::State& state) {
  auto g = parse_graph(slurp("graphs/star3.json"));
  for (auto _ : state) benchmark::DoNotOptimize(certify_virtually_special(g));
}
BENCHMARK(BM_CertifyStar);

void BM_CheckUndilatedExplicit(benchmark::State& state) {
  auto g = path_graph(static_cast<std::size_t>(state.range(0)), 2);
  auto walls = expand(construct_tree_walls(g).walls, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(check_undilated(walls));
  state.counters["wall_vertices"] = static_cast<double>(walls.vertices().size());
}
BENCHMARK(BM_CheckUndilatedExplicit)->Arg(4)->Arg(8)->Arg(12);

void BM_BrittonReduce(benchmark::State& state) {
  auto group = make_gpq({1, 3});
  auto word = power(parse_word("[s^-1 a s, a b^-1] s^-1 a^3 s b^-1 a^-1", group.presentation),
                    state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(britton_reduce(word, group.presentation));
}
BENCHMARK(BM_BrittonReduce)->Arg(1)->Arg(16)->Arg(256);

void BM_QuotientSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(finite_quotient_search({1, 3}, n, 0));
}
BENCHMARK(BM_QuotientSearch)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SublatticeBasis(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-1'000'000, 1'000'000);
  std::vector<LatticeVector> gens{{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
  for (auto _ : state) benchmark::DoNotOptimize(sublattice_basis(gens));
}
BENCHMARK(BM_SublatticeBasis);

}  // namespace
BENCHMARK_MAIN();
