// SPDX-License-Identifier: Apache-2.0
// Serial vs OpenMP partition enumeration on the same ADC instances.
#include "dw/adc.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dw;

namespace {

AlphabetPtr letters(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    return make_alphabet(names);
}

// Random automata with a mix of keys, inclusions and denials; fixed seed.
std::vector<Adc> workload() {
    std::mt19937 rng(2718);
    auto alpha = letters(3);
    std::vector<Adc> out;
    for (int i = 0; i < 24; ++i) {
        std::uniform_int_distribution<State> st(0, 2);
        std::uniform_int_distribution<Symbol> sy(0, 2);
        std::vector<Transition> ts;
        for (int k = 0; k < 9; ++k)
            ts.push_back({st(rng), sy(rng), st(rng)});
        BuchiAutomaton a;
        a.ts = TransitionSystem(alpha, 3, ts);
        a.initial = 0;
        a.final = {false, true, i % 2 == 0};
        ConstraintSet c;
        c.add(Constraint::key(sy(rng)));
        c.add(Constraint::inclusion(sy(rng), {sy(rng)}));
        c.add(Constraint::denial(sy(rng), sy(rng)));
        out.push_back({a, c});
    }
    return out;
}

void run(benchmark::State& state, bool parallel) {
    static const auto inst = workload();
    SearchOptions o;
    o.parallel = parallel;
    o.blockSize = static_cast<std::size_t>(state.range(0));
    o.cache = false; // every iteration does the full work
    std::size_t nonempty = 0;
    for (auto _ : state) {
        nonempty = 0;
        for (const auto& adc : inst)
            nonempty += adc_nonempty_general(adc, o).nonEmpty;
        benchmark::DoNotOptimize(nonempty);
    }
    state.counters["nonempty"] = static_cast<double>(nonempty);
}

void BM_SearchSerial(benchmark::State& s) { run(s, false); }
void BM_SearchParallel(benchmark::State& s) { run(s, true); }

} // namespace

BENCHMARK(BM_SearchSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
