#include <benchmark/benchmark.h>

#include <bistab/bistab.hpp>

#include <fstream>
#include <sstream>

namespace {

std::string fixture_text(const char* file) {
  std::ifstream in(std::string(BISTAB_NETWORKS_DIR) + "/" + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* const kFiles[] = {"a.net", "b1.net", "b2.net", "c.net"};

void BM_Parse(benchmark::State& state) {
  const std::string text = fixture_text(kFiles[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(bistab::parse_network(text));
}
BENCHMARK(BM_Parse)->DenseRange(0, 3);

void BM_Decide(benchmark::State& state) {
  const bistab::BiNetwork net = bistab::parse_network(fixture_text(kFiles[state.range(0)]));
  for (auto _ : state) {
    const bistab::Structure st = bistab::analyze_structure(net);
    benchmark::DoNotOptimize(bistab::decide(st.partition, st.applicability));
  }
}
BENCHMARK(BM_Decide)->DenseRange(0, 3);

void BM_SolveLevel(benchmark::State& state) {
  const bistab::BiNetwork net = bistab::parse_network(fixture_text("b2.net"));
  const bistab::Structure st = bistab::analyze_structure(net);
  const auto gp = bistab::geometry_from_parameters(net, st.partition, {1.0, 72.0},
                                                   {-101.0, -101.0, -1000.0, -100.0, -315.0});
  for (auto _ : state) benchmark::DoNotOptimize(bistab::solve_level(*gp, st.partition, gp->K));
}
BENCHMARK(BM_SolveLevel);

void BM_Enumerate(benchmark::State& state) {
  const bistab::BiNetwork net = bistab::parse_network(fixture_text("c.net"));
  const std::vector<double> c{100.0, 1.0, 101.0, 90.0};
  for (auto _ : state) benchmark::DoNotOptimize(bistab::enumerate_steady_states(net, {1.0, 328.0}, c));
}
BENCHMARK(BM_Enumerate);

void BM_MakeWitness(benchmark::State& state) {
  const bistab::BiNetwork net = bistab::parse_network(fixture_text(kFiles[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(bistab::make_witness(net));
}
BENCHMARK(BM_MakeWitness)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
