#include <benchmark/benchmark.h>

#include <cstdint>

#include "qq/boolfn.hpp"
#include "qq/catalog.hpp"
#include "qq/composers.hpp"
#include "qq/serialize.hpp"
#include "qq/transforms.hpp"
#include "qq/verifier.hpp"

static void BM_RunEquality3AllInputs(benchmark::State& state) {
  const qq::QueryAlgorithm alg = qq::build_equality3();
  for (auto _ : state) {
    double sum = 0.0;
    for (std::uint32_t w = 0; w < 8; ++w) {
      sum += qq::accept_probability(alg, qq::Input{3, w});
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_RunEquality3AllInputs);

static void BM_BuildT2nExact8(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qq::build_t2n_exact(8));
  }
}
BENCHMARK(BM_BuildT2nExact8);

static void BM_ComposeQuad(benchmark::State& state) {
  const qq::QueryAlgorithm eq = qq::build_equality3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qq::compose_quad(eq, eq, eq, eq));
  }
}
BENCHMARK(BM_ComposeQuad);

static void BM_DeriveQuadTable(benchmark::State& state) {
  const qq::QueryAlgorithm eq = qq::build_equality3();
  const qq::QueryAlgorithm quad = qq::compose_quad(eq, eq, eq, eq);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qq::derive_truth_table(quad));
  }
}
BENCHMARK(BM_DeriveQuadTable);

static void BM_ClassifyStringEq4(benchmark::State& state) {
  const qq::QueryAlgorithm alg = qq::build_string_eq4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qq::classify(alg));
  }
}
BENCHMARK(BM_ClassifyStringEq4);

static void BM_DeterministicComplexity6(benchmark::State& state) {
  const qq::TruthTable f = qq::named_function("EQUALITY3");
  const qq::TruthTable pair = qq::and_compose(f, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qq::deterministic_complexity(pair));
  }
}
BENCHMARK(BM_DeterministicComplexity6);

static void BM_DocumentRoundTrip(benchmark::State& state) {
  const qq::QueryAlgorithm eq = qq::build_equality3();
  const qq::QueryAlgorithm quad = qq::compose_quad(eq, eq, eq, eq);
  for (auto _ : state) {
    const std::string text = qq::to_document(quad, "");
    benchmark::DoNotOptimize(qq::from_document(text));
  }
}
BENCHMARK(BM_DocumentRoundTrip);

BENCHMARK_MAIN();
