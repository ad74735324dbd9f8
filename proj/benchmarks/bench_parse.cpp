#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "grammars.hpp"
#include "uglr/grammar.hpp"
#include "uglr/parser.hpp"
#include "uglr/phases.hpp"
#include "uglr/tables.hpp"

using namespace uglr;

namespace {

// "pron v det n" + k trailing PPs: ambiguity grows with every PP.
std::vector<std::string> toy_sentence(int pps) {
    std::vector<std::string> w = {"pron", "v", "det", "n"};
    for (int i = 0; i < pps; ++i) {
        w.push_back("prep");
        w.push_back("det");
        w.push_back("n");
    }
    return w;
}

std::vector<std::string> featured_sentence(int pps) {
    std::vector<std::string> w = {"they", "see", "the", "dog"};
    for (int i = 0; i < pps; ++i) {
        w.push_back("near");
        w.push_back("the");
        w.push_back("dog");
    }
    return w;
}

void phase1_bench(benchmark::State& state, const ParseTables& t,
                  const std::vector<std::string>& words, const ParseOptions& opts) {
    std::size_t parses = 0;
    for (auto _ : state) {
        PhaseOneResult r = parse_phase1(t, words, opts);
        parses = r.trees.size();
        benchmark::DoNotOptimize(r);
    }
    state.counters["parses"] = static_cast<double>(parses);
}

void BM_phase1_toy_slr(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kToy), TableMode::SLR);
    phase1_bench(state, t, toy_sentence(static_cast<int>(state.range(0))), {});
}
BENCHMARK(BM_phase1_toy_slr)->DenseRange(0, 4);

void BM_phase1_toy_lalr(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kToy), TableMode::LALR);
    phase1_bench(state, t, toy_sentence(static_cast<int>(state.range(0))), {});
}
BENCHMARK(BM_phase1_toy_lalr)->DenseRange(0, 4);

void BM_phase1_featured_generalized(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kFeatured), TableMode::LALR);
    phase1_bench(state, t, featured_sentence(static_cast<int>(state.range(0))), {});
}
BENCHMARK(BM_phase1_featured_generalized)->DenseRange(0, 4);

void BM_phase1_featured_full_ug(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kFeatured), TableMode::LALR);
    ParseOptions opts;
    opts.use_full_ug = true;
    phase1_bench(state, t, featured_sentence(static_cast<int>(state.range(0))), opts);
}
BENCHMARK(BM_phase1_featured_full_ug)->DenseRange(0, 4);

void BM_phase1_featured_pure_cf(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kFeatured), TableMode::LALR);
    ParseOptions opts;
    opts.pure_cf = true;
    phase1_bench(state, t, featured_sentence(static_cast<int>(state.range(0))), opts);
}
BENCHMARK(BM_phase1_featured_pure_cf)->DenseRange(0, 4);

void BM_phase2_featured(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kFeatured), TableMode::LALR);
    PhaseOneResult r = parse_phase1(t, featured_sentence(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        std::size_t n = 0;
        for (const auto& tree : r.trees) n += phase_two(t, tree).size();
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_phase2_featured)->DenseRange(0, 4);

void BM_movement_end_to_end(benchmark::State& state) {
    ParseTables t = compile_tables(load_grammar(bench::kMovement), TableMode::LALR);
    std::vector<std::string> words = {"what", "does", "john", "seek"};
    for (auto _ : state) {
        std::size_t n = 0;
        for (const auto& tree : parse_phase1(t, words).trees) n += phase_two(t, tree).size();
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_movement_end_to_end);

}  // namespace

BENCHMARK_MAIN();
