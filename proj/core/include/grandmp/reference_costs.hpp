#pragma once

#include <array>
#include <cstddef>

namespace grandmp {

/// Published reference figures for the gate cost of the rate-1/2 parity-check
/// circuit at each block exponent. The gates report prints our construction's
/// numbers next to these and the per-cell deltas; AND/XOR/max-weight cells
/// depend on the null-space basis, so deltas audit basis agreement while the
/// depth/identity checks hold for any basis.
struct ReferenceCost {
    int n;
    std::size_t and_gates;       // total row weight
    std::size_t xor_gates;       // sum over rows of ceil(log2(row weight))
    std::size_t max_row_weight;
    double sparsity_percent;     // 100 * weight / (rows * cols), 2 decimals
    std::size_t steps;           // 1 + ceil(log2(max row weight))
};

inline constexpr std::array<ReferenceCost, 6> kReferenceCosts = {{
    {5, 136, 49, 16, 26.56, 5},
    {6, 322, 106, 22, 15.72, 6},
    {7, 984, 247, 44, 12.01, 7},
    {8, 2890, 562, 78, 8.82, 8},
    {9, 8322, 1247, 158, 6.35, 9},
    {10, 24828, 2758, 304, 4.74, 10},
}};

}  // namespace grandmp
