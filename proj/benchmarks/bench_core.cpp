#include <benchmark/benchmark.h>

#include <vector>

#include "sliderule/catalog.hpp"
#include "sliderule/compiler.hpp"
#include "sliderule/layout.hpp"
#include "sliderule/render.hpp"
#include "sliderule/sheet.hpp"
#include "sliderule/simulator.hpp"

using namespace sliderule;

static void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_expression("R*arcsin(sqrt(h*(2*R+h))/(R+h))"));
}
BENCHMARK(BM_ParseExpression);

static void BM_Invert(benchmark::State& state) {
  auto fn = ScaleFunction::parse("loggamma(n+1)", "n", Interval::closed(0.5, 20));
  double u = fn(7.3);
  for (auto _ : state) benchmark::DoNotOptimize(invert_scale_fn(fn, u));
}
BENCHMARK(BM_Invert);

static void BM_ReadResult(benchmark::State& state) {
  RuleState s = slide_set(RuleState::make(builtin("product_xy").rule), 3.3);
  for (auto _ : state) benchmark::DoNotOptimize(read_result(s, 2.7, ReadingModel{0.1}));
}
BENCHMARK(BM_ReadResult);

static void BM_CompileBilinear(benchmark::State& state) {
  auto lin = [](const char* v, double lo, double hi) { return ScaleFunction::parse(v, v, Interval::closed(lo, hi)); };
  BilinearForm form{2, 3, -1, 2, -1, lin("x", 1, 5), lin("y", 0, 4), lin("z", -200, 50)};
  for (auto _ : state) benchmark::DoNotOptimize(compile_bilinear(form));
}
BENCHMARK(BM_CompileBilinear);

static void BM_ErrorProfile(benchmark::State& state) {
  RuleSpec r = builtin("product_xy").rule;
  std::vector<double> g(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.05 + 8.45 * static_cast<double>(i) / static_cast<double>(g.size() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(error_profile(r, g, g, ReadingModel{0.1}));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ErrorProfile)->Arg(10)->Arg(50);

static void BM_GenerateTicks(benchmark::State& state) {
  RuleState s = RuleState::make(builtin("replus").rule);
  for (auto _ : state) benchmark::DoNotOptimize(generate_ticks(s.stator()));
}
BENCHMARK(BM_GenerateTicks);

static void BM_ExportAndRender(benchmark::State& state) {
  std::vector<RuleSpec> rules = {builtin("replus").rule, builtin("quadplus").rule};
  for (auto _ : state) benchmark::DoNotOptimize(render_svg(export_sheet(rules)));
}
BENCHMARK(BM_ExportAndRender);
BENCHMARK_MAIN();
