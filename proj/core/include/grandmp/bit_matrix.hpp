#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace grandmp {

/// Dense bit vector over GF(2), packed 64 bits per word. Unused tail bits of
/// the last word are kept zero so whole-word comparison and XOR are valid.
class BitVector {
public:
    explicit BitVector(std::size_t len);
    static BitVector from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);

    bool is_zero() const;
    std::size_t popcount() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
        lhs ^= rhs;
        return lhs;
    }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

private:
    std::size_t len_;
    std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix, row-major, each row packed into 64-bit words.
/// cols must be positive; rows may be zero (a null-space basis of a
/// full-column-rank matrix is empty but still has a defined column count).
class BitMatrix {
public:
    /// Empty 0x0 placeholder so aggregates can hold a to-be-assigned matrix.
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols);
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    /// XOR row src into row dst.
    void row_xor(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);

    std::span<const std::uint64_t> row_words(std::size_t r) const;
    std::span<std::uint64_t> row_words(std::size_t r);
    std::size_t words_per_row() const { return row_words_; }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t row_words_ = 0;
    std::vector<std::uint64_t> words_;
};

/// C = A * B over GF(2). Throws std::invalid_argument on dimension mismatch.
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

/// y = A * v over GF(2); the sequential reference for pmult.
BitVector mat_vec(const BitMatrix& a, const BitVector& v);

BitMatrix transpose(const BitMatrix& a);

struct RrefResult {
    BitMatrix r;                       // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot columns, increasing
    std::size_t rank;
};

RrefResult rref(const BitMatrix& a);

/// Basis of {x : A x^T = 0} as rows, built from the RREF by the free-variable
/// construction, rows emitted in increasing free-column order. Full column
/// rank yields a 0 x cols matrix.
BitMatrix null_space(const BitMatrix& a);

}  // namespace grandmp
