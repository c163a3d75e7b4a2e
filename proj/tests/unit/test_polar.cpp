#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "grandmp/polar.hpp"
#include "grandmp/rng.hpp"

using namespace grandmp;
using doctest::Contains;

namespace {

const ReliabilitySequence& sequence() {
    static const ReliabilitySequence seq =
        ReliabilitySequence::load_file(GRANDMP_TEST_SEQUENCE_PATH);
    return seq;
}

BitVector random_info(std::size_t len, SplitMix64& rng) {
    BitVector v(len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, rng.next_bit());
    return v;
}

}  // namespace

TEST_CASE("bundled sequence is a permutation of 0..1023") {
    const auto& order = sequence().order();
    REQUIRE(order.size() == ReliabilitySequence::kLength);
    std::vector<std::uint16_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CHECK(sorted[i] == i);
    }
}

TEST_CASE("bundled sequence starts with the published prefix") {
    const auto& order = sequence().order();
    const std::array<std::uint16_t, 8> prefix = {0, 1, 2, 4, 8, 16, 32, 3};
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        CHECK(order[i] == prefix[i]);
    }
}

TEST_CASE("bundled sequence respects binary domination") {
    // If a covers b bitwise (b's ones are a subset of a's), a is at least as
    // reliable, so it must appear later in the ascending-reliability order.
    const auto& order = sequence().order();
    std::array<std::size_t, ReliabilitySequence::kLength> pos{};
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

    for (std::size_t a = 0; a < ReliabilitySequence::kLength; ++a) {
        for (std::size_t b = 0; b < ReliabilitySequence::kLength; ++b) {
            if (a != b && (a & b) == b) {
                CHECK(pos[a] > pos[b]);
            }
        }
    }
}

TEST_CASE("sequence loader accepts whitespace and rejects malformed input") {
    SUBCASE("valid stream round-trips") {
        std::ostringstream text;
        for (std::size_t i = 0; i < ReliabilitySequence::kLength; ++i) {
            text << "  " << i << " \r\n";
        }
        std::istringstream in(text.str());
        const ReliabilitySequence seq = ReliabilitySequence::load(in);
        CHECK(seq.order().front() == 0);
        CHECK(seq.order().back() == 1023);
    }
    SUBCASE("blank line") {
        std::istringstream in("0\n1\n\n2\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in), Contains("line 3: blank line"),
                             std::runtime_error);
    }
    SUBCASE("non-numeric token") {
        std::istringstream in("0\nabc\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in),
                             Contains("line 2: not a decimal index: 'abc'"), std::runtime_error);
    }
    SUBCASE("trailing characters") {
        std::istringstream in("12x\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in),
                             Contains("line 1: trailing characters: '12x'"), std::runtime_error);
    }
    SUBCASE("index out of range") {
        std::istringstream in("1024\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in),
                             Contains("index 1024 out of range [0, 1023]"), std::runtime_error);
    }
    SUBCASE("duplicate index") {
        std::istringstream in("7\n7\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in), Contains("line 2: duplicate index 7"),
                             std::runtime_error);
    }
    SUBCASE("short stream") {
        std::istringstream in("0\n1\n");
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load(in),
                             Contains("expected 1024 entries, got 2"), std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(ReliabilitySequence::load_file("/nonexistent/seq.txt"),
                             Contains("cannot open"), std::runtime_error);
    }
}

TEST_CASE("build_generator small cases are exact") {
    const BitMatrix g1 = build_generator(1);
    REQUIRE(g1.rows() == 2);
    CHECK(g1.row(0) == BitVector::from_bits({1, 0}));
    CHECK(g1.row(1) == BitVector::from_bits({1, 1}));

    const BitMatrix g2 = build_generator(2);
    REQUIRE(g2.rows() == 4);
    CHECK(g2.row(0) == BitVector::from_bits({1, 0, 0, 0}));
    CHECK(g2.row(1) == BitVector::from_bits({1, 1, 0, 0}));
    CHECK(g2.row(2) == BitVector::from_bits({1, 0, 1, 0}));
    CHECK(g2.row(3) == BitVector::from_bits({1, 1, 1, 1}));
}

TEST_CASE("build_generator entries follow the subset rule") {
    const BitMatrix g = build_generator(5);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            CHECK(g.get(i, j) == ((j & i) == j));
        }
    }
}

TEST_CASE("transform matrix is its own inverse") {
    for (int n = 1; n <= 6; ++n) {
        const BitMatrix g = build_generator(n);
        CHECK(mat_mul(g, g) == BitMatrix::identity(std::size_t{1} << n));
    }
}

TEST_CASE("build_generator rejects out-of-range sizes") {
    CHECK_THROWS_AS(build_generator(0), std::invalid_argument);
    CHECK_THROWS_AS(build_generator(11), std::invalid_argument);
}

TEST_CASE("select_sets at block length 32 picks the weight >= 3 indices") {
    const auto [info, frozen] = select_sets(sequence(), 32, 16);
    REQUIRE(info.size() == 16);
    REQUIRE(frozen.size() == 16);
    for (std::size_t i : info) {
        CHECK(std::popcount(i) >= 3);
    }
    for (std::size_t f : frozen) {
        CHECK(std::popcount(f) < 3);
    }
}

TEST_CASE("select_sets returns a sorted partition of 0..N-1") {
    for (std::size_t block : {32u, 64u, 128u, 256u, 512u, 1024u}) {
        const auto [info, frozen] = select_sets(sequence(), block, block / 2);
        CHECK(std::is_sorted(info.begin(), info.end()));
        CHECK(std::is_sorted(frozen.begin(), frozen.end()));
        std::vector<std::size_t> all;
        all.insert(all.end(), info.begin(), info.end());
        all.insert(all.end(), frozen.begin(), frozen.end());
        std::sort(all.begin(), all.end());
        REQUIRE(all.size() == block);
        for (std::size_t i = 0; i < block; ++i) CHECK(all[i] == i);
    }
}

TEST_CASE("select_sets rejects bad shapes") {
    CHECK_THROWS_AS(select_sets(sequence(), 32, 33), std::invalid_argument);
    CHECK_THROWS_AS(select_sets(sequence(), 48, 24), std::invalid_argument);
    CHECK_THROWS_AS(select_sets(sequence(), 2048, 1024), std::invalid_argument);
}

TEST_CASE("build_code produces consistent half-rate codes") {
    for (int n = 5; n <= 10; ++n) {
        const PolarCode code = build_code(sequence(), n);
        const std::size_t block = std::size_t{1} << n;
        CHECK(code.n == n);
        CHECK(code.block_length == block);
        CHECK(code.dimension == block / 2);
        CHECK(code.rate == doctest::Approx(0.5));
        CHECK(code.generator.rows() == block);
        CHECK(code.generator.cols() == block);
        CHECK(code.info_generator.rows() == block / 2);
        CHECK(code.info_generator.cols() == block);
        CHECK(code.parity_check.rows() == block / 2);
        CHECK(code.parity_check.cols() == block);

        // Every parity row annihilates every generator row.
        for (std::size_t r = 0; r < code.parity_check.rows(); ++r) {
            CHECK(mat_vec(code.info_generator, code.parity_check.row(r)).is_zero());
        }
        CHECK(rref(code.parity_check).rank == block / 2);
        CHECK(rref(code.info_generator).rank == block / 2);
    }
}

TEST_CASE("build_code rejects unsupported sizes") {
    CHECK_THROWS_AS(build_code(sequence(), 4), std::invalid_argument);
    CHECK_THROWS_AS(build_code(sequence(), 11), std::invalid_argument);
}

TEST_CASE("info_generator rows are the info rows of the transform") {
    const PolarCode code = build_code(sequence(), 5);
    for (std::size_t k = 0; k < code.info_set.size(); ++k) {
        CHECK(code.info_generator.row(k) == code.generator.row(code.info_set[k]));
    }
}

TEST_CASE("encode of a unit vector is the matching transform row") {
    const PolarCode code = build_code(sequence(), 5);
    for (std::size_t k = 0; k < code.dimension; ++k) {
        BitVector info(code.dimension);
        info.set(k, true);
        CHECK(encode(code, info) == code.generator.row(code.info_set[k]));
    }
}

TEST_CASE("encode then extract_info round-trips") {
    SplitMix64 rng(71);
    for (int n = 5; n <= 10; ++n) {
        const PolarCode code = build_code(sequence(), n);
        for (int iter = 0; iter < 20; ++iter) {
            const BitVector info = random_info(code.dimension, rng);
            const BitVector cw = encode(code, info);
            CHECK(cw.size() == code.block_length);
            CHECK(extract_info(code, cw) == info);
            // Codewords live in the parity-check null space.
            CHECK(mat_vec(code.parity_check, cw).is_zero());
        }
    }
}

TEST_CASE("all-zero info encodes to the all-zero codeword") {
    const PolarCode code = build_code(sequence(), 6);
    CHECK(encode(code, BitVector(code.dimension)).is_zero());
}

TEST_CASE("encode and extract_info validate lengths") {
    const PolarCode code = build_code(sequence(), 5);
    CHECK_THROWS_AS(encode(code, BitVector(code.dimension + 1)), std::invalid_argument);
    CHECK_THROWS_AS(extract_info(code, BitVector(code.block_length - 1)), std::invalid_argument);
}
