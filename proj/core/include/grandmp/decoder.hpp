#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "grandmp/bit_matrix.hpp"
#include "grandmp/pmult.hpp"
#include "grandmp/polar.hpp"
#include "grandmp/qam.hpp"

namespace grandmp {

/// One joint hypothesis over the cut-off symbols: a candidate-list index per
/// selected position. Index 0 is that symbol's hard decision.
struct TestErrorPattern {
    std::vector<std::uint8_t> assignment;
};

/// Likelihood ranking of a received sequence: per-position reliabilities plus
/// the min(S, L) least-reliable positions in ascending likelihood order.
struct RankedSymbols {
    std::vector<SymbolReliability> symbols;
    std::vector<std::size_t> selected;
};

/// Rank all symbols by likelihood (ties broken by lower position index) and
/// select the first min(cutoff, L) of them.
RankedSymbols rank_and_cutoff(const std::vector<ReceivedSymbol>& received,
                              const Constellation& cst, std::size_t cutoff);

/// Full Cartesian product of candidate indices in graded order: number of
/// non-hard entries ascending, then lexicographic assignment. The all-hard
/// pattern comes first. candidate_counts entries must be >= 1.
std::vector<TestErrorPattern> enumerate_teps(const std::vector<std::size_t>& candidate_counts);

/// Substitute candidate points at the selected positions per the pattern and
/// serialize to n_bits; bits past n_bits are padding the receiver knows to be
/// zero and are dropped.
BitVector apply_tep(const std::vector<SymbolReliability>& symbols,
                    const std::vector<std::size_t>& selected, const TestErrorPattern& tep,
                    const Constellation& cst, std::size_t n_bits);

/// Modeled decode latency in clock cycles: 2n + 2S + 4.
unsigned latency_model(int n, unsigned cutoff);

struct DecodedOutput {
    BitVector codeword;
    BitVector info;
};

struct DecodeResult {
    std::optional<DecodedOutput> output;      // empty = abandoned
    std::size_t queries_checked = 0;          // TEPs syndrome-tested, <= 4^S
    std::size_t patterns_valid = 0;           // TEPs that passed the syndrome check
    unsigned modeled_latency_cycles = 0;
    std::optional<double> selected_distance;  // winner's squared distance to the received sequence
};

/// Guess-and-check decoder: rank, cut off, walk every test error pattern,
/// keep the zero-syndrome candidate closest to the received sequence (ties go
/// to the earliest pattern in graded order), or abandon after exhausting the
/// pattern space. Immutable after construction; safe to share across threads.
class Decoder {
public:
    Decoder(PolarCode code, Constellation cst, unsigned cutoff);

    DecodeResult decode(const std::vector<ReceivedSymbol>& received) const;

    const PolarCode& code() const { return code_; }
    const Constellation& constellation() const { return cst_; }
    unsigned cutoff() const { return cutoff_; }

private:
    PolarCode code_;
    Constellation cst_;
    unsigned cutoff_;
    RowIndexSets rows_;                 // sparse view of the parity check
    std::vector<BitVector> columns_;    // parity-check columns, one per codeword bit
};

/// Convenience wrapper constructing a one-shot Decoder.
DecodeResult decode(const PolarCode& code, const std::vector<ReceivedSymbol>& received,
                    const Constellation& cst, unsigned cutoff);

}  // namespace grandmp
