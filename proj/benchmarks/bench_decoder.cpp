#include <benchmark/benchmark.h>

#include <vector>

#include "grandmp/channel.hpp"
#include "grandmp/decoder.hpp"
#include "grandmp/polar.hpp"
#include "grandmp/rng.hpp"

using namespace grandmp;

namespace {

const ReliabilitySequence& sequence() {
    static const ReliabilitySequence seq =
        ReliabilitySequence::load_file(GRANDMP_TEST_SEQUENCE_PATH);
    return seq;
}

// One decode per iteration over a pre-generated pool of noisy blocks.
void bm_decode(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const unsigned order = static_cast<unsigned>(state.range(1));
    const unsigned cutoff = static_cast<unsigned>(state.range(2));

    const PolarCode code = build_code(sequence(), n);
    const Constellation cst(order);
    const Decoder decoder(code, cst, cutoff);
    const ChannelParams params = make_channel(order, 4.0);

    SplitMix64 rng(7);
    std::vector<std::vector<ReceivedSymbol>> pool;
    for (int i = 0; i < 64; ++i) {
        BitVector info(code.dimension);
        for (std::size_t b = 0; b < info.size(); ++b) info.set(b, rng.next_bit());
        pool.push_back(transmit(bits_to_symbols(encode(code, info), cst), params, rng));
    }

    std::size_t i = 0;
    std::size_t queries = 0;
    for (auto _ : state) {
        const DecodeResult res = decoder.decode(pool[i]);
        benchmark::DoNotOptimize(res.queries_checked);
        queries += res.queries_checked;
        i = (i + 1) & 63;
    }
    state.SetItemsProcessed(state.iterations());
    state.counters["mean_queries"] =
        benchmark::Counter(static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}

}  // namespace

BENCHMARK(bm_decode)
    ->ArgsProduct({{5, 8}, {4, 16}, {4, 8}})
    ->ArgNames({"n", "M", "S"})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
