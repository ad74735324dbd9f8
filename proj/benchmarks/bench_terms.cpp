#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "uglr/term.hpp"
#include "uglr/term_io.hpp"

using namespace uglr;

namespace {

// Full binary tree of the given depth, leaves indexed heap-style so
// every position has a distinct salt. `twist` shifts which leaves are
// variables; atoms depend on the salt alone, so two twists of the same
// tree always unify (var meets atom or var), exercising the whole
// structure instead of failing on the first leaf.
Term make_term(int depth, int twist, int salt) {
    if (depth == 0) {
        if ((salt + twist) % 3 == 0)
            return Term::var("X" + std::to_string(salt) + "_" + std::to_string(twist));
        return Term::atom("a" + std::to_string(salt % 5));
    }
    return Term::compound("f", {make_term(depth - 1, twist, salt * 2 + 1),
                                make_term(depth - 1, twist, salt * 2 + 2)});
}

void BM_unify(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    Term a = make_term(depth, 0, 1);
    Term b = make_term(depth, 1, 1);
    for (auto _ : state) {
        auto s = unify(a, b);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_unify)->DenseRange(4, 12, 4);

void BM_unify_apply(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    Term a = make_term(depth, 0, 1);
    Term b = make_term(depth, 1, 1);
    auto s = unify(a, b);
    for (auto _ : state) {
        Term u = s->apply(a);
        benchmark::DoNotOptimize(u);
    }
}
BENCHMARK(BM_unify_apply)->DenseRange(4, 12, 4);

void BM_anti_unify(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    Term a = make_term(depth, 0, 1);
    Term b = make_term(depth, 2, 1);
    for (auto _ : state) {
        Term g = anti_unify(a, b);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_anti_unify)->DenseRange(4, 12, 4);

void BM_subsumes(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    Term a = make_term(depth, 0, 1);
    Term b = make_term(depth, 2, 1);
    Term g = anti_unify(a, b);
    for (auto _ : state) {
        bool ok = subsumes(g, a);
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_subsumes)->DenseRange(4, 12, 4);

void BM_canonical_form(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    Term a = rename_apart(make_term(depth, 0, 1));
    for (auto _ : state) {
        Term c = canonical_form(a);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_canonical_form)->DenseRange(4, 12, 4);

void BM_parse_print_roundtrip(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    std::string text = term_to_string(make_term(depth, 0, 1));
    for (auto _ : state) {
        Term t = parse_term(text);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_parse_print_roundtrip)->DenseRange(4, 10, 3);

}  // namespace

BENCHMARK_MAIN();
