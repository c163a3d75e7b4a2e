#pragma once

#include <cstddef>
#include <vector>

#include "grandmp/bit_matrix.hpp"

namespace grandmp {

/// A constellation point; coordinates are odd integers in lattice units.
struct Point {
    int in_phase = 0;
    int quadrature = 0;

    friend bool operator==(const Point& x, const Point& y) {
        return x.in_phase == y.in_phase && x.quadrature == y.quadrature;
    }
    friend bool operator!=(const Point& x, const Point& y) { return !(x == y); }
};

/// Noisy channel output in the same lattice units as Point.
struct ReceivedSymbol {
    double in_phase = 0.0;
    double quadrature = 0.0;
};

/// Bits per axis m for a supported order M = 2^{2m}; throws on any other M.
unsigned qam_bits_per_axis(unsigned order);

/// Square M-QAM on the odd-integer grid {±1, ±3, …, ±(2^m − 1)}² with
/// per-axis reflected Gray labels. A 2m-bit label, read most-significant bit
/// first, selects the in-phase amplitude with its first m bits and the
/// quadrature amplitude with its last m bits. Immutable.
class Constellation {
public:
    /// order must be one of {4, 16, 64, 256, 1024, 4096}.
    explicit Constellation(unsigned order);

    unsigned order() const { return order_; }
    unsigned bits_per_axis() const { return m_; }
    unsigned bits_per_symbol() const { return 2 * m_; }
    int max_amplitude() const { return max_amp_; }

    /// All points indexed by label value.
    const std::vector<Point>& points() const { return points_; }

    Point point_at(unsigned label) const;
    unsigned label_of(Point p) const;
    bool contains(Point p) const;

    /// Mean point energy: 2(M−1)/3 on the odd-integer grid.
    double average_energy() const;

private:
    unsigned order_ = 0;
    unsigned m_ = 0;
    int max_amp_ = 0;
    std::vector<Point> points_;
};

/// Per-symbol demodulation summary: the hard decision, its likelihood, and the
/// candidate list (hard point first, then surviving near-neighbour errors).
struct SymbolReliability {
    double likelihood = 0.0;
    Point hard;
    std::vector<Point> candidates;  // size 1..4, candidates[0] == hard
};

/// Map a bit string to ⌈len/2m⌉ points, zero-padding the tail group.
std::vector<Point> bits_to_symbols(const BitVector& bits, const Constellation& cst);

/// Inverse of bits_to_symbols: concatenate labels, truncate to n_bits.
BitVector symbols_to_bits(const std::vector<Point>& points, const Constellation& cst,
                          std::size_t n_bits);

/// Nearest constellation point: per-axis round to the closest odd integer,
/// clamped to ±(2^m − 1).
Point hard_demodulate(const ReceivedSymbol& r, const Constellation& cst);

/// L(r, s) = √(d₁² + d₂²) with d₁ = 1 − |A_c − a|, d₂ = 1 − |A_s − b|.
/// Expects s == hard_demodulate(r); larger value means a more reliable symbol.
double likelihood(const ReceivedSymbol& r, const Point& s);

/// Up to three near-neighbour errors of the hard decision s, in the order
/// horizontal, vertical, diagonal; candidates falling off the grid are
/// dropped. Sign(0) is taken as +1.
std::vector<Point> nne_candidates(const ReceivedSymbol& r, const Point& s,
                                  const Constellation& cst);

/// Bundle hard decision, likelihood, and candidate list for one symbol.
SymbolReliability reliability_of(const ReceivedSymbol& r, const Constellation& cst);

}  // namespace grandmp
