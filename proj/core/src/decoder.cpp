#include "grandmp/decoder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace grandmp {

namespace {

double squared_distance(const Point& p, const ReceivedSymbol& r) {
    const double di = static_cast<double>(p.in_phase) - r.in_phase;
    const double dq = static_cast<double>(p.quadrature) - r.quadrature;
    return di * di + dq * dq;
}

// Visit every assignment tuple in graded order: substitution count ascending,
// then lexicographic. visit() sees the completed assignment.
template <typename Visit>
void walk_graded(const std::vector<std::size_t>& counts, Visit&& visit) {
    const std::size_t n = counts.size();
    std::vector<std::uint8_t> assignment(n, 0);

    // Recursive lexicographic fill with exactly `remaining` non-hard entries
    // left to place from position k on.
    auto dfs = [&](auto&& self, std::size_t k, std::size_t remaining) -> void {
        if (k == n) {
            visit(assignment);
            return;
        }
        const std::size_t slots_after = n - k - 1;
        if (slots_after >= remaining) {
            assignment[k] = 0;
            self(self, k + 1, remaining);
        }
        if (remaining > 0) {
            for (std::size_t c = 1; c < counts[k]; ++c) {
                assignment[k] = static_cast<std::uint8_t>(c);
                self(self, k + 1, remaining - 1);
            }
            assignment[k] = 0;
        }
    };

    std::size_t max_weight = 0;
    for (std::size_t c : counts) {
        if (c > 1) ++max_weight;
    }
    for (std::size_t w = 0; w <= max_weight; ++w) {
        dfs(dfs, 0, w);
    }
}

}  // namespace

RankedSymbols rank_and_cutoff(const std::vector<ReceivedSymbol>& received,
                              const Constellation& cst, std::size_t cutoff) {
    RankedSymbols out;
    out.symbols.reserve(received.size());
    for (const ReceivedSymbol& r : received) {
        out.symbols.push_back(reliability_of(r, cst));
    }
    std::vector<std::size_t> order(received.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.symbols[a].likelihood < out.symbols[b].likelihood;
    });
    const std::size_t take = std::min(cutoff, order.size());
    out.selected.assign(order.begin(), order.begin() + take);
    return out;
}

std::vector<TestErrorPattern> enumerate_teps(const std::vector<std::size_t>& candidate_counts) {
    for (std::size_t c : candidate_counts) {
        if (c == 0) {
            throw std::invalid_argument("enumerate_teps: empty candidate list");
        }
    }
    std::vector<TestErrorPattern> out;
    walk_graded(candidate_counts, [&](const std::vector<std::uint8_t>& assignment) {
        out.push_back(TestErrorPattern{assignment});
    });
    return out;
}

BitVector apply_tep(const std::vector<SymbolReliability>& symbols,
                    const std::vector<std::size_t>& selected, const TestErrorPattern& tep,
                    const Constellation& cst, std::size_t n_bits) {
    if (tep.assignment.size() != selected.size()) {
        throw std::invalid_argument("apply_tep: assignment/selection size mismatch");
    }
    std::vector<Point> points;
    points.reserve(symbols.size());
    for (const SymbolReliability& sr : symbols) {
        points.push_back(sr.hard);
    }
    for (std::size_t k = 0; k < selected.size(); ++k) {
        const SymbolReliability& sr = symbols.at(selected[k]);
        points[selected[k]] = sr.candidates.at(tep.assignment[k]);
    }
    // symbols_to_bits stops at n_bits, which is exactly the padding-drop rule:
    // trailing label bits are known zeros, not data.
    return symbols_to_bits(points, cst, n_bits);
}

unsigned latency_model(int n, unsigned cutoff) {
    return 2 * static_cast<unsigned>(n) + 2 * cutoff + 4;
}

Decoder::Decoder(PolarCode code, Constellation cst, unsigned cutoff)
    : code_(std::move(code)),
      cst_(std::move(cst)),
      cutoff_(cutoff),
      rows_(index_rows(code_.parity_check)) {
    const BitMatrix& h = code_.parity_check;
    columns_.reserve(h.cols());
    for (std::size_t j = 0; j < h.cols(); ++j) {
        BitVector col(h.rows());
        for (std::size_t i = 0; i < h.rows(); ++i) {
            col.set(i, h.get(i, j));
        }
        columns_.push_back(std::move(col));
    }
}

DecodeResult Decoder::decode(const std::vector<ReceivedSymbol>& received) const {
    const std::size_t n_bits = code_.block_length;
    const std::size_t group = cst_.bits_per_symbol();
    if (received.size() * group < n_bits) {
        throw std::invalid_argument("decode: " + std::to_string(received.size()) +
                                    " symbols cannot carry " + std::to_string(n_bits) + " bits");
    }

    const RankedSymbols ranked = rank_and_cutoff(received, cst_, cutoff_);
    const std::size_t s_eff = ranked.selected.size();

    std::vector<Point> hard_points;
    hard_points.reserve(ranked.symbols.size());
    for (const SymbolReliability& sr : ranked.symbols) {
        hard_points.push_back(sr.hard);
    }
    const BitVector base_bits = symbols_to_bits(hard_points, cst_, n_bits);
    const PmultResult base = pmult(rows_, base_bits);

    // Per selected position: candidate syndromes relative to the hard choice
    // (XOR of the parity-check columns where the labels differ) and candidate
    // distance increments.
    std::vector<std::size_t> counts(s_eff);
    std::vector<std::vector<BitVector>> deltas(s_eff);
    std::vector<std::vector<double>> extra_dist(s_eff);
    double hard_selected_dist = 0.0;
    for (std::size_t k = 0; k < s_eff; ++k) {
        const std::size_t pos = ranked.selected[k];
        const SymbolReliability& sr = ranked.symbols[pos];
        const unsigned hard_label = cst_.label_of(sr.hard);
        const double hard_dist = squared_distance(sr.hard, received[pos]);
        hard_selected_dist += hard_dist;
        counts[k] = sr.candidates.size();
        deltas[k].reserve(counts[k]);
        extra_dist[k].reserve(counts[k]);
        for (std::size_t c = 0; c < counts[k]; ++c) {
            BitVector delta(code_.parity_check.rows());
            if (c > 0) {
                const unsigned diff = cst_.label_of(sr.candidates[c]) ^ hard_label;
                for (std::size_t j = 0; j < group; ++j) {
                    const std::size_t global = pos * group + j;
                    if (global >= n_bits) break;  // padding bits carry no parity columns
                    if ((diff >> (group - 1 - j)) & 1u) delta ^= columns_[global];
                }
            }
            deltas[k].push_back(std::move(delta));
            extra_dist[k].push_back(squared_distance(sr.candidates[c], received[pos]) -
                                    hard_dist);
        }
    }

    double unselected_dist = 0.0;
    {
        std::vector<bool> is_selected(ranked.symbols.size(), false);
        for (std::size_t pos : ranked.selected) is_selected[pos] = true;
        for (std::size_t pos = 0; pos < ranked.symbols.size(); ++pos) {
            if (!is_selected[pos]) {
                unselected_dist += squared_distance(hard_points[pos], received[pos]);
            }
        }
    }

    // Graded walk with incremental syndrome and distance; the first-visited
    // minimum wins ties, which is exactly the graded-order tie-break.
    std::size_t queries = 0;
    std::size_t valid = 0;
    bool found = false;
    double best_extra = 0.0;
    std::vector<std::uint8_t> best_assignment;
    std::vector<std::uint8_t> assignment(s_eff, 0);
    BitVector syndrome = base.syndrome;

    auto dfs = [&](auto&& self, std::size_t k, std::size_t remaining, double extra) -> void {
        if (k == s_eff) {
            ++queries;
            if (syndrome.is_zero()) {
                ++valid;
                if (!found || extra < best_extra) {
                    found = true;
                    best_extra = extra;
                    best_assignment = assignment;
                }
            }
            return;
        }
        const std::size_t slots_after = s_eff - k - 1;
        if (slots_after >= remaining) {
            assignment[k] = 0;
            self(self, k + 1, remaining, extra);
        }
        if (remaining > 0) {
            for (std::size_t c = 1; c < counts[k]; ++c) {
                assignment[k] = static_cast<std::uint8_t>(c);
                syndrome ^= deltas[k][c];
                self(self, k + 1, remaining - 1, extra + extra_dist[k][c]);
                syndrome ^= deltas[k][c];
            }
            assignment[k] = 0;
        }
    };
    std::size_t max_weight = 0;
    for (std::size_t c : counts) {
        if (c > 1) ++max_weight;
    }
    for (std::size_t w = 0; w <= max_weight; ++w) {
        dfs(dfs, 0, w, 0.0);
    }

    DecodeResult result;
    result.queries_checked = queries;
    result.patterns_valid = valid;
    result.modeled_latency_cycles = latency_model(code_.n, static_cast<unsigned>(s_eff));
    if (!found) {
        return result;  // abandoned
    }

    const TestErrorPattern winner{best_assignment};
    BitVector codeword = apply_tep(ranked.symbols, ranked.selected, winner, cst_, n_bits);
    if (!pmult(rows_, codeword).syndrome.is_zero()) {
        throw std::logic_error("decode: winning pattern failed the syndrome re-check");
    }
    BitVector info = extract_info(code_, codeword);
    result.selected_distance = unselected_dist + hard_selected_dist + best_extra;
    result.output = DecodedOutput{std::move(codeword), std::move(info)};
    return result;
}

DecodeResult decode(const PolarCode& code, const std::vector<ReceivedSymbol>& received,
                    const Constellation& cst, unsigned cutoff) {
    return Decoder(code, cst, cutoff).decode(received);
}

}  // namespace grandmp
