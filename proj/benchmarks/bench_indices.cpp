#include <benchmark/benchmark.h>

#include "glsn/fixture.hpp"
#include "glsn/graph.hpp"
#include "glsn/indices.hpp"

namespace {

glsn::Glsn fixture_graph(std::size_t ports) {
  const auto fx = glsn::generate_fixture(
      {.seed = 7, .ports = ports, .countries = ports / 5, .routes = ports / 2, .noise = 0.05});
  return glsn::build_glsn(fx.routes, fx.ports, glsn::WeightScheme::Unweighted);
}

void BM_BuildGraph(benchmark::State& state) {
  const auto ports = static_cast<std::size_t>(state.range(0));
  const auto fx = glsn::generate_fixture(
      {.seed = 7, .ports = ports, .countries = ports / 5, .routes = ports / 2, .noise = 0.05});
  for (auto _ : state) {
    benchmark::DoNotOptimize(glsn::build_glsn(fx.routes, fx.ports, glsn::WeightScheme::CapN1));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(200)->Arg(800);

void BM_GlsnBetweenness(benchmark::State& state) {
  const auto g = fixture_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(glsn::glsn_betweenness(g, glsn::kReportedLmax));
  }
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_GlsnBetweenness)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PortBetweenness(benchmark::State& state) {
  const auto g = fixture_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(glsn::port_betweenness(g));
}
BENCHMARK(BM_PortBetweenness)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace
