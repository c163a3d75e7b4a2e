#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grandmp/bit_matrix.hpp"

namespace grandmp {

/// Sparse row view of a parity-check matrix: the column indices of the
/// 1-entries per row. Rows must be nonzero.
struct RowIndexSets {
    std::vector<std::vector<std::uint32_t>> index_sets;
    std::size_t cols = 0;
    std::size_t total_weight = 0;    // sum of row weights
    std::size_t max_row_weight = 0;

    std::size_t rows() const { return index_sets.size(); }
};

/// Extract per-row 1-entry index sets. An all-zero row is rejected: it would
/// make the syndrome bit a constant and signals a broken construction.
RowIndexSets index_rows(const BitMatrix& h);

struct PmultResult {
    BitVector syndrome;
    std::size_t steps_executed = 0;
};

/// Circuit-faithful matrix-vector product over GF(2): one gather step (the
/// per-entry AND layer), then pairwise-halving XOR rounds run in lockstep
/// across rows until every row holds a single value; an unpaired trailing
/// element passes through to the next round unchanged. steps_executed is the
/// modeled circuit depth: 1 + max_i ceil(log2(row weight i)).
PmultResult pmult(const RowIndexSets& rows, const BitVector& c);

/// Gate and depth accounting for the modeled circuit.
struct GateCostReport {
    std::size_t and_gates = 0;      // total row weight
    std::size_t xor_gates = 0;      // sum of ceil(log2(row weight)) per row
    std::size_t parallel_steps = 0; // 1 + max ceil(log2(row weight))
    std::size_t max_row_weight = 0;
    double sparsity = 0.0;          // total weight / (rows * cols)
};

/// k and n are the report's normalizing dimensions (rows and cols of H).
GateCostReport cost_report(const RowIndexSets& rows, std::size_t k, std::size_t n);

}  // namespace grandmp
