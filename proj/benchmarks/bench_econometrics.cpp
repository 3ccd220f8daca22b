#include <benchmark/benchmark.h>

#include <random>

#include "glsn/econometrics.hpp"

namespace {

glsn::DesignMatrix random_design(std::size_t n, std::size_t vars) {
  std::mt19937_64 engine(11);
  std::normal_distribution<double> normal;
  glsn::DesignMatrix d;
  d.response_name = "y";
  d.columns.assign(vars, std::vector<double>(n));
  for (std::size_t j = 0; j < vars; ++j) {
    d.names.push_back("x" + std::to_string(j));
    for (auto& v : d.columns[j]) v = normal(engine);
  }
  for (std::size_t r = 0; r < n; ++r) d.response.push_back(d.columns[0][r] + normal(engine));
  return d;
}

void BM_OlsFit(benchmark::State& state) {
  const auto d = random_design(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(glsn::ols_fit(d));
}
BENCHMARK(BM_OlsFit)->Arg(157)->Arg(2000);

void BM_SelectModel(benchmark::State& state) {
  const auto d = random_design(157, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(glsn::select_model(d));
  state.counters["subsets"] = static_cast<double>((1u << state.range(0)) - 1);
}
BENCHMARK(BM_SelectModel)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
