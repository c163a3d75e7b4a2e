#include "grandmp/bit_matrix.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace grandmp {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

}  // namespace

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {
    if (len == 0) {
        throw std::invalid_argument("BitVector: length must be positive");
    }
}

BitVector BitVector::from_bits(std::initializer_list<int> bits) {
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) {
        v.set(i++, b != 0);
    }
    return v;
}

bool BitVector::get(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVector::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

bool BitVector::is_zero() const {
    for (std::uint64_t w : words_) {
        if (w != 0) return false;
    }
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) {
        throw std::invalid_argument("BitVector: XOR length mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_words_(words_for(cols)), words_(rows * row_words_, 0) {
    if (cols == 0) {
        throw std::invalid_argument("BitMatrix: column count must be positive");
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    return (words_[r * row_words_ + c / kWordBits] >> (c % kWordBits)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    std::uint64_t& w = words_[r * row_words_ + c / kWordBits];
    if (value) {
        w |= mask;
    } else {
        w &= ~mask;
    }
}

void BitMatrix::row_xor(std::size_t dst, std::size_t src) {
    std::uint64_t* d = words_.data() + dst * row_words_;
    const std::uint64_t* s = words_.data() + src * row_words_;
    for (std::size_t i = 0; i < row_words_; ++i) {
        d[i] ^= s[i];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = words_.data() + a * row_words_;
    std::uint64_t* pb = words_.data() + b * row_words_;
    for (std::size_t i = 0; i < row_words_; ++i) {
        std::swap(pa[i], pb[i]);
    }
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    auto src = row_words(r);
    for (std::size_t i = 0; i < row_words_; ++i) {
        v.words()[i] = src[i];
    }
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix: set_row length mismatch");
    }
    auto dst = row_words(r);
    for (std::size_t i = 0; i < row_words_; ++i) {
        dst[i] = v.words()[i];
    }
}

std::span<const std::uint64_t> BitMatrix::row_words(std::size_t r) const {
    return {words_.data() + r * row_words_, row_words_};
}

std::span<std::uint64_t> BitMatrix::row_words(std::size_t r) {
    return {words_.data() + r * row_words_, row_words_};
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: inner dimensions differ (" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    }
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row_words(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.get(i, k)) {
                auto src = b.row_words(k);
                for (std::size_t w = 0; w < src.size(); ++w) {
                    out[w] ^= src[w];
                }
            }
        }
    }
    return c;
}

BitVector mat_vec(const BitMatrix& a, const BitVector& v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("mat_vec: dimension mismatch");
    }
    if (a.rows() == 0) {
        throw std::invalid_argument("mat_vec: matrix has no rows");
    }
    BitVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto rw = a.row_words(i);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < rw.size(); ++w) {
            acc ^= rw[w] & v.words()[w];
        }
        out.set(i, std::popcount(acc) & 1);
    }
    return out;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto rw = a.row_words(i);
        for (std::size_t w = 0; w < rw.size(); ++w) {
            std::uint64_t bits = rw[w];
            while (bits != 0) {
                const int bit = std::countr_zero(bits);
                bits &= bits - 1;
                t.set(w * 64 + static_cast<std::size_t>(bit), i, true);
            }
        }
    }
    return t;
}

RrefResult rref(const BitMatrix& a) {
    BitMatrix r = a;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < r.rows() && !r.get(sel, c)) {
            ++sel;
        }
        if (sel == r.rows()) continue;
        r.swap_rows(pivot_row, sel);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i != pivot_row && r.get(i, c)) {
                r.row_xor(i, pivot_row);
            }
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    const std::size_t rank = pivots.size();
    return {std::move(r), std::move(pivots), rank};
}

BitMatrix null_space(const BitMatrix& a) {
    const auto [r, pivots, rank] = rref(a);
    const std::size_t cols = a.cols();
    BitMatrix basis(cols - rank, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::size_t out = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        basis.set(out, f, true);
        for (std::size_t pr = 0; pr < rank; ++pr) {
            if (r.get(pr, f)) {
                basis.set(out, pivots[pr], true);
            }
        }
        ++out;
    }
    return basis;
}

}  // namespace grandmp
