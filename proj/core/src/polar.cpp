#include "grandmp/polar.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grandmp {

ReliabilitySequence ReliabilitySequence::load(std::istream& source) {
    std::vector<std::uint16_t> order;
    order.reserve(kLength);
    std::vector<bool> seen(kLength, false);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        // Tolerate trailing carriage returns and surrounding blanks.
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) {
            throw std::runtime_error("reliability sequence: line " + std::to_string(line_no) +
                                     ": blank line");
        }
        line.erase(0, start);

        unsigned long value = 0;
        std::size_t consumed = 0;
        try {
            value = std::stoul(line, &consumed, 10);
        } catch (const std::exception&) {
            throw std::runtime_error("reliability sequence: line " + std::to_string(line_no) +
                                     ": not a decimal index: '" + line + "'");
        }
        if (consumed != line.size()) {
            throw std::runtime_error("reliability sequence: line " + std::to_string(line_no) +
                                     ": trailing characters: '" + line + "'");
        }
        if (value >= kLength) {
            throw std::runtime_error("reliability sequence: line " + std::to_string(line_no) +
                                     ": index " + std::to_string(value) + " out of range [0, 1023]");
        }
        if (seen[value]) {
            throw std::runtime_error("reliability sequence: line " + std::to_string(line_no) +
                                     ": duplicate index " + std::to_string(value));
        }
        seen[value] = true;
        order.push_back(static_cast<std::uint16_t>(value));
        if (order.size() > kLength) break;
    }

    if (order.size() != kLength) {
        throw std::runtime_error("reliability sequence: expected 1024 entries, got " +
                                 std::to_string(order.size()));
    }
    return ReliabilitySequence(std::move(order));
}

ReliabilitySequence ReliabilitySequence::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("reliability sequence: cannot open '" + path + "'");
    }
    return load(in);
}

BitMatrix build_generator(int n) {
    if (n < 1 || n > 10) {
        throw std::invalid_argument("build_generator: n must be in [1, 10], got " +
                                    std::to_string(n));
    }
    const std::size_t size = std::size_t{1} << n;
    BitMatrix g(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            // (j & i) == j: every 1-bit of j appears in i.
            if ((j & i) == j) g.set(i, j, true);
        }
    }
    return g;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_sets(const ReliabilitySequence& seq, std::size_t block_length, std::size_t dimension) {
    if (dimension > block_length) {
        throw std::invalid_argument("select_sets: dimension exceeds block length");
    }
    if (block_length == 0 || block_length > ReliabilitySequence::kLength ||
        (block_length & (block_length - 1)) != 0) {
        throw std::invalid_argument("select_sets: block length must be a power of two <= 1024");
    }
    std::vector<std::size_t> restricted;
    restricted.reserve(block_length);
    for (std::uint16_t idx : seq.order()) {
        if (idx < block_length) restricted.push_back(idx);
    }
    std::vector<std::size_t> frozen(restricted.begin(),
                                    restricted.begin() + (block_length - dimension));
    std::vector<std::size_t> info(restricted.begin() + (block_length - dimension),
                                  restricted.end());
    std::sort(frozen.begin(), frozen.end());
    std::sort(info.begin(), info.end());
    return {std::move(info), std::move(frozen)};
}

PolarCode build_code(const ReliabilitySequence& seq, int n) {
    if (n < 5 || n > 10) {
        throw std::invalid_argument("build_code: n must be in [5, 10], got " + std::to_string(n));
    }
    PolarCode code;
    code.n = n;
    code.block_length = std::size_t{1} << n;
    code.dimension = code.block_length / 2;
    code.rate = 0.5;

    auto [info, frozen] = select_sets(seq, code.block_length, code.dimension);
    code.info_set = std::move(info);
    code.frozen_set = std::move(frozen);

    code.generator = build_generator(n);
    code.info_generator = BitMatrix(code.dimension, code.block_length);
    for (std::size_t r = 0; r < code.dimension; ++r) {
        code.info_generator.set_row(r, code.generator.row(code.info_set[r]));
    }
    code.parity_check = null_space(code.info_generator);
    return code;
}

namespace {

// Row-vector product v * A: XOR of the rows of A selected by the set bits of v.
BitVector vec_mat(const BitVector& v, const BitMatrix& a) {
    if (v.size() != a.rows()) {
        throw std::invalid_argument("vec_mat: dimension mismatch");
    }
    BitVector out(a.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) out ^= a.row(i);
    }
    return out;
}

}  // namespace

BitVector encode(const PolarCode& code, const BitVector& info) {
    if (info.size() != code.dimension) {
        throw std::invalid_argument("encode: info length " + std::to_string(info.size()) +
                                    " != K = " + std::to_string(code.dimension));
    }
    BitVector u(code.block_length);
    for (std::size_t r = 0; r < code.dimension; ++r) {
        u.set(code.info_set[r], info.get(r));
    }
    return vec_mat(u, code.generator);
}

BitVector extract_info(const PolarCode& code, const BitVector& codeword) {
    if (codeword.size() != code.block_length) {
        throw std::invalid_argument("extract_info: codeword length mismatch");
    }
    // G_N is involutory over GF(2), so u = c * G_N.
    BitVector u = vec_mat(codeword, code.generator);
    BitVector info(code.dimension);
    for (std::size_t r = 0; r < code.dimension; ++r) {
        info.set(r, u.get(code.info_set[r]));
    }
    return info;
}

}  // namespace grandmp
