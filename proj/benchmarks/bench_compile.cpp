#include <benchmark/benchmark.h>

#include <string>

#include "grammars.hpp"
#include "uglr/grammar.hpp"
#include "uglr/tables.hpp"

using namespace uglr;

namespace {

void BM_load_grammar(benchmark::State& state) {
    for (auto _ : state) {
        Grammar g = load_grammar(bench::kFeatured);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_load_grammar);

void compile_bench(benchmark::State& state, const char* src, TableMode mode) {
    Grammar g = load_grammar(src);
    for (auto _ : state) {
        ParseTables t = compile_tables(g, mode);
        benchmark::DoNotOptimize(t);
    }
}

void BM_compile_toy_slr(benchmark::State& s) { compile_bench(s, bench::kToy, TableMode::SLR); }
void BM_compile_toy_lalr(benchmark::State& s) { compile_bench(s, bench::kToy, TableMode::LALR); }
void BM_compile_featured_slr(benchmark::State& s) {
    compile_bench(s, bench::kFeatured, TableMode::SLR);
}
void BM_compile_featured_lalr(benchmark::State& s) {
    compile_bench(s, bench::kFeatured, TableMode::LALR);
}
void BM_compile_movement_lalr(benchmark::State& s) {
    compile_bench(s, bench::kMovement, TableMode::LALR);
}
BENCHMARK(BM_compile_toy_slr);
BENCHMARK(BM_compile_toy_lalr);
BENCHMARK(BM_compile_featured_slr);
BENCHMARK(BM_compile_featured_lalr);
BENCHMARK(BM_compile_movement_lalr);

void BM_serialize(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kFeatured), TableMode::LALR);
    for (auto _ : state) {
        std::string bytes = serialize_tables(t);
        benchmark::DoNotOptimize(bytes);
    }
}
BENCHMARK(BM_serialize);

void BM_deserialize(benchmark::State& state) {
    std::string bytes = serialize_tables(compile_tables(load_grammar(bench::kFeatured),
                                                        TableMode::LALR));
    for (auto _ : state) {
        ParseTables t = deserialize_tables(bytes);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_deserialize);

}  // namespace

BENCHMARK_MAIN();
