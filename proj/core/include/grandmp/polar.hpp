#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "grandmp/bit_matrix.hpp"

namespace grandmp {

/// The NR universal reliability sequence: 1024 distinct channel indices in
/// ascending reliability order. Ships as a plain-text data file, one decimal
/// index per line.
class ReliabilitySequence {
public:
    static constexpr std::size_t kLength = 1024;

    /// Parse from a text stream. Throws std::runtime_error naming the
    /// offending line on wrong count, duplicate, or out-of-range entries.
    static ReliabilitySequence load(std::istream& source);
    static ReliabilitySequence load_file(const std::string& path);

    const std::vector<std::uint16_t>& order() const { return order_; }

private:
    explicit ReliabilitySequence(std::vector<std::uint16_t> order) : order_(std::move(order)) {}
    std::vector<std::uint16_t> order_;
};

/// A rate-1/2 NR polar code: generator, info/frozen split, parity check.
struct PolarCode {
    int n = 0;                           // exponent, N = 2^n
    std::size_t block_length = 0;        // N
    std::size_t dimension = 0;           // K
    std::vector<std::size_t> info_set;   // sorted ascending
    std::vector<std::size_t> frozen_set; // sorted ascending
    BitMatrix generator;                 // G_N, N x N
    BitMatrix info_generator;            // G_I, K x N (rows of G_N with indices in info_set)
    BitMatrix parity_check;              // H, (N-K) x N, null space of G_I
    double rate = 0.0;
};

/// G_N = F^{(x)n} for the kernel F = [[1,0],[1,1]]; entry (i,j) is 1 iff the
/// binary expansion of j is bitwise dominated by that of i. Requires 1 <= n <= 10.
BitMatrix build_generator(int n);

/// Restrict the sequence to indices < N keeping order; the first N-K entries
/// (least reliable) freeze, the last K carry information. Returned sorted.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_sets(const ReliabilitySequence& seq, std::size_t block_length, std::size_t dimension);

/// Assemble a rate-1/2 code for 5 <= n <= 10.
PolarCode build_code(const ReliabilitySequence& seq, int n);

/// c = u * G_N with info bits at the info positions and zeros on frozen ones.
BitVector encode(const PolarCode& code, const BitVector& info);

/// Recover info bits from a codeword using the involution G_N * G_N = I.
BitVector extract_info(const PolarCode& code, const BitVector& codeword);

}  // namespace grandmp
