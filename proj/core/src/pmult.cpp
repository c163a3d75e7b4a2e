#include "grandmp/pmult.hpp"

#include <stdexcept>
#include <string>

namespace grandmp {

namespace {

std::size_t ceil_log2(std::size_t w) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < w) ++bits;
    return bits;
}

}  // namespace

RowIndexSets index_rows(const BitMatrix& h) {
    RowIndexSets out;
    out.cols = h.cols();
    out.index_sets.resize(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        auto& set = out.index_sets[i];
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (h.get(i, j)) set.push_back(static_cast<std::uint32_t>(j));
        }
        if (set.empty()) {
            throw std::invalid_argument("index_rows: row " + std::to_string(i) +
                                        " is all-zero");
        }
        out.total_weight += set.size();
        if (set.size() > out.max_row_weight) out.max_row_weight = set.size();
    }
    return out;
}

PmultResult pmult(const RowIndexSets& rows, const BitVector& c) {
    if (c.size() != rows.cols) {
        throw std::invalid_argument("pmult: vector length " + std::to_string(c.size()) +
                                    " != matrix cols " + std::to_string(rows.cols));
    }

    // Gather layer: r_ij = c_j for every 1-entry (i, j). One parallel step.
    std::vector<std::vector<std::uint8_t>> lanes(rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        lanes[i].reserve(rows.index_sets[i].size());
        for (std::uint32_t j : rows.index_sets[i]) {
            lanes[i].push_back(c.get(j) ? 1 : 0);
        }
    }
    std::size_t steps = 1;

    // Halving rounds in lockstep; a row already reduced to one value holds it.
    bool pending = true;
    while (pending) {
        pending = false;
        for (const auto& lane : lanes) {
            if (lane.size() > 1) {
                pending = true;
                break;
            }
        }
        if (!pending) break;
        ++steps;
        for (auto& lane : lanes) {
            if (lane.size() <= 1) continue;
            std::size_t next = 0;
            std::size_t pos = 0;
            for (; pos + 1 < lane.size(); pos += 2) {
                lane[next++] = lane[pos] ^ lane[pos + 1];
            }
            if (pos < lane.size()) lane[next++] = lane[pos];  // odd leftover
            lane.resize(next);
        }
    }

    PmultResult result{BitVector(rows.rows()), steps};
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        result.syndrome.set(i, lanes[i][0] != 0);
    }
    return result;
}

GateCostReport cost_report(const RowIndexSets& rows, std::size_t k, std::size_t n) {
    GateCostReport report;
    report.and_gates = rows.total_weight;
    report.max_row_weight = rows.max_row_weight;
    std::size_t max_depth = 0;
    for (const auto& set : rows.index_sets) {
        const std::size_t depth = ceil_log2(set.size());
        report.xor_gates += depth;
        if (depth > max_depth) max_depth = depth;
    }
    report.parallel_steps = 1 + max_depth;
    report.sparsity = k == 0 || n == 0
                          ? 0.0
                          : static_cast<double>(rows.total_weight) / (static_cast<double>(k) *
                                                                      static_cast<double>(n));
    return report;
}

}  // namespace grandmp
