#include <benchmark/benchmark.h>

#include <vector>

#include "grandmp/pmult.hpp"
#include "grandmp/polar.hpp"
#include "grandmp/rng.hpp"

using namespace grandmp;

namespace {

const ReliabilitySequence& sequence() {
    static const ReliabilitySequence seq =
        ReliabilitySequence::load_file(GRANDMP_TEST_SEQUENCE_PATH);
    return seq;
}

void bm_pmult(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PolarCode code = build_code(sequence(), n);
    const RowIndexSets rows = index_rows(code.parity_check);

    SplitMix64 rng(1);
    std::vector<BitVector> inputs;
    for (int i = 0; i < 64; ++i) {
        BitVector v(code.block_length);
        for (std::size_t b = 0; b < v.size(); ++b) v.set(b, rng.next_bit());
        inputs.push_back(std::move(v));
    }

    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmult(rows, inputs[i]).syndrome);
        i = (i + 1) & 63;
    }
    state.SetItemsProcessed(state.iterations());
    state.counters["and_gates"] = static_cast<double>(rows.total_weight);
    state.counters["depth"] = static_cast<double>(pmult(rows, inputs[0]).steps_executed);
}

void bm_dense_mat_vec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PolarCode code = build_code(sequence(), n);

    SplitMix64 rng(1);
    BitVector v(code.block_length);
    for (std::size_t b = 0; b < v.size(); ++b) v.set(b, rng.next_bit());

    for (auto _ : state) {
        benchmark::DoNotOptimize(mat_vec(code.parity_check, v));
    }
    state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(bm_pmult)->DenseRange(5, 10);
BENCHMARK(bm_dense_mat_vec)->DenseRange(5, 10);

BENCHMARK_MAIN();
