#include <benchmark/benchmark.h>

#include <random>

#include "lewiskit/algebra.hpp"
#include "lewiskit/duality.hpp"
#include "lewiskit/model_space.hpp"
#include "lewiskit/proof_build.hpp"
#include "lewiskit/sphere.hpp"

namespace {

using namespace lewiskit;

SphereModel bench_model() {
  SphereModel m;
  m.worlds = {"w1", "w2", "w3"};
  m.spheres = {{0b010u}, {0b010u, 0b011u}, {0b100u, 0b110u, 0b111u}};
  m.valuation = {{"p", 0b001u}, {"q", 0b110u}};
  return m;
}

VAlgebra bench_algebra() {
  // The two-atom algebra dual to a centered two-world structure.
  SphereModel m = bench_model();
  m.worlds.pop_back();
  m.spheres = {{0b01u}, {0b01u, 0b11u}};
  AlphaModel am;
  am.points = m.worlds;
  am.f.assign(4, std::vector<PointSet>(2, 0));
  AlphaModel built = alpha_from_sphere(SphereStructure{m.worlds, m.spheres});
  return algebra_from_alpha(built);
}

void BM_Eval(benchmark::State& state) {
  SphereModel m = bench_model();
  Formula f = parse("(p |> q) & ((q m|> p) -> box (p | q))");
  for (auto _ : state) benchmark::DoNotOptimize(eval(m, f));
}
BENCHMARK(BM_Eval);

void BM_ParsePrintRoundtrip(benchmark::State& state) {
  std::mt19937_64 rng(7);
  Formula f = random_formula(rng, {"p", "q", "r"}, 8);
  std::string text = print(f);
  for (auto _ : state) benchmark::DoNotOptimize(print(parse(text)));
}
BENCHMARK(BM_ParsePrintRoundtrip);

void BM_CheckAxioms(benchmark::State& state) {
  VAlgebra a = bench_algebra();
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(a));
}
BENCHMARK(BM_CheckAxioms);

void BM_EnumerateTwoAtomAlgebras(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_v_algebras(2));
}
BENCHMARK(BM_EnumerateTwoAtomAlgebras);

void BM_DualityRoundtrip(benchmark::State& state) {
  VAlgebra a = bench_algebra();
  for (auto _ : state) {
    AlphaModel am = alpha_from_algebra(a);
    benchmark::DoNotOptimize(algebra_from_alpha(am));
  }
}
BENCHMARK(BM_DualityRoundtrip);

void BM_ProofReplay(benchmark::State& state) {
  Formula p = var("p"), q = var("q"), r = var("r");
  Proof pr = prove_monotonicity(p, q, r);
  Calculus c = *Calculus::parse("GV");
  for (auto _ : state) benchmark::DoNotOptimize(check_proof(c, pr));
}
BENCHMARK(BM_ProofReplay);

void BM_CountermodelSearch(benchmark::State& state) {
  Formula gamma = parse("p |> q");
  Formula phi = parse("p -> q");
  for (auto _ : state)
    benchmark::DoNotOptimize(countermodel_search({gamma}, phi, Strength::Local,
                                                 {}, 2));
}
BENCHMARK(BM_CountermodelSearch);

}  // namespace

BENCHMARK_MAIN();
