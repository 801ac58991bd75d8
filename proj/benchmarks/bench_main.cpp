#include <benchmark/benchmark.h>

#include <random>

#include "cfl/formula.hpp"
#include "cfl/proof.hpp"
#include "cfl/quantum.hpp"
#include "cfl/semantics.hpp"

namespace {

const cfl::Model& hardy_model() {
  static const cfl::Model m = cfl::build_model(cfl::export_table(cfl::find_hardy()));
  return m;
}

constexpr const char* kLine14 = "L1 & R2 => (R1 []-> ~(L1- -> R1 & R1-))";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cfl::parse(kLine14));
}
BENCHMARK(BM_Parse);

void BM_Print(benchmark::State& state) {
  const cfl::Formula f = cfl::parse(kLine14);
  for (auto _ : state) benchmark::DoNotOptimize(cfl::print(f));
}
BENCHMARK(BM_Print);

void BM_HoldsGlobally(benchmark::State& state) {
  const cfl::Model& m = hardy_model();
  const cfl::Formula f = cfl::parse("L1 => ((R2 & R2+) -> (R1 []-> R1 & R1-))");
  for (auto _ : state) benchmark::DoNotOptimize(cfl::holds_globally(m, f));
}
BENCHMARK(BM_HoldsGlobally);

void BM_CheckTheorem(benchmark::State& state) {
  const cfl::Model& m = hardy_model();
  for (auto _ : state) benchmark::DoNotOptimize(cfl::check_theorem(m));
}
BENCHMARK(BM_CheckTheorem);

void BM_Audit(benchmark::State& state) {
  const cfl::Model& m = hardy_model();
  const cfl::ProofScript s = cfl::builtin_script();
  for (auto _ : state) benchmark::DoNotOptimize(cfl::audit(m, s));
}
BENCHMARK(BM_Audit);

void BM_FindHardy(benchmark::State& state) {
  cfl::SearchParams p;
  p.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cfl::find_hardy(p));
}
BENCHMARK(BM_FindHardy)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_ExportTable(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  const cfl::HardyConfig c{u(rng), u(rng), u(rng), u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(cfl::export_table(c));
}
BENCHMARK(BM_ExportTable);

}  // namespace

BENCHMARK_MAIN();
