#include "grandmp/sim.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace grandmp {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void validate(const SimConfig& config) {
    if (config.trials_per_point < 1) {
        throw std::invalid_argument("sim: trials_per_point must be >= 1");
    }
    if (config.ebn0_grid.empty()) {
        throw std::invalid_argument("sim: ebn0 grid is empty");
    }
    if (config.n < 5 || config.n > 10) {
        throw std::invalid_argument("sim: n must be in [5, 10]");
    }
    qam_bits_per_axis(config.mqam);  // throws on unsupported order
}

struct Tally {
    std::size_t mismatches = 0;
    std::size_t abandonments = 0;
    std::uint64_t queries = 0;
    std::uint64_t patterns_valid = 0;
    std::size_t uncoded_errors = 0;

    void add(const TrialOutcome& outcome) {
        if (outcome.kind == TrialKind::mismatch) ++mismatches;
        if (outcome.kind == TrialKind::abandoned) ++abandonments;
        queries += outcome.queries_checked;
        patterns_valid += outcome.patterns_valid;
        if (outcome.uncoded_error) ++uncoded_errors;
    }
    void merge(const Tally& other) {
        mismatches += other.mismatches;
        abandonments += other.abandonments;
        queries += other.queries;
        patterns_valid += other.patterns_valid;
        uncoded_errors += other.uncoded_errors;
    }
};

}  // namespace

TrialOutcome run_trial(const Decoder& decoder, const ChannelParams& params, SplitMix64& rng) {
    const PolarCode& code = decoder.code();
    const Constellation& cst = decoder.constellation();

    BitVector info(code.dimension);
    for (std::size_t i = 0; i < code.dimension; ++i) {
        info.set(i, rng.next_bit());
    }
    const BitVector codeword = encode(code, info);
    const std::vector<Point> sent = bits_to_symbols(codeword, cst);
    const std::vector<ReceivedSymbol> received = transmit(sent, params, rng);

    std::vector<Point> hard;
    hard.reserve(received.size());
    for (const ReceivedSymbol& r : received) {
        hard.push_back(hard_demodulate(r, cst));
    }
    const BitVector hard_bits = symbols_to_bits(hard, cst, code.block_length);

    const DecodeResult result = decoder.decode(received);

    TrialOutcome outcome;
    outcome.queries_checked = result.queries_checked;
    outcome.patterns_valid = result.patterns_valid;
    outcome.uncoded_error = !(hard_bits == codeword);
    if (!result.output.has_value()) {
        outcome.kind = TrialKind::abandoned;
    } else if (result.output->codeword == codeword) {
        outcome.kind = TrialKind::success;
    } else {
        outcome.kind = TrialKind::mismatch;
    }
    return outcome;
}

std::vector<BlerPoint> run_bler(const PolarCode& code, const SimConfig& config) {
    validate(config);
    if (code.n != config.n) {
        throw std::invalid_argument("sim: code block exponent does not match config");
    }
    const Constellation cst(config.mqam);
    const Decoder decoder(code, cst, config.cutoff);
    const unsigned workers = config.workers == 0 ? 1 : config.workers;

    std::vector<BlerPoint> points;
    points.reserve(config.ebn0_grid.size());
    for (std::size_t p = 0; p < config.ebn0_grid.size(); ++p) {
        const ChannelParams params = make_channel(config.mqam, config.ebn0_grid[p]);
        const std::size_t trials = config.trials_per_point;

        auto run_slice = [&](std::size_t first, std::size_t stride, Tally& tally) {
            for (std::size_t t = first; t < trials; t += stride) {
                SplitMix64 rng(derive_stream(config.master_seed, p, t));
                tally.add(run_trial(decoder, params, rng));
            }
        };

        Tally total;
        if (workers == 1) {
            run_slice(0, 1, total);
        } else {
            std::vector<Tally> partial(workers);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back(run_slice, w, workers, std::ref(partial[w]));
            }
            for (auto& th : pool) th.join();
            for (const Tally& t : partial) total.merge(t);
        }

        BlerPoint point;
        point.ebn0_db = config.ebn0_grid[p];
        point.trials = trials;
        point.mismatches = total.mismatches;
        point.abandonments = total.abandonments;
        point.block_errors = total.mismatches + total.abandonments;
        point.bler = static_cast<double>(point.block_errors) / static_cast<double>(trials);
        point.mean_queries =
            static_cast<double>(total.queries) / static_cast<double>(trials);
        point.mean_patterns_valid =
            static_cast<double>(total.patterns_valid) / static_cast<double>(trials);
        point.uncoded_block_errors = total.uncoded_errors;
        points.push_back(point);
    }
    return points;
}

void write_csv(const std::vector<BlerPoint>& points, std::ostream& out) {
    out << "ebn0_db,trials,block_errors,mismatches,abandonments,bler,mean_queries\n";
    for (const BlerPoint& p : points) {
        out << fmt_double(p.ebn0_db) << ',' << p.trials << ',' << p.block_errors << ','
            << p.mismatches << ',' << p.abandonments << ',' << fmt_double(p.bler) << ','
            << fmt_double(p.mean_queries) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write_csv: stream write failed");
    }
}

void write_json(const SimConfig& config, const std::vector<BlerPoint>& points,
                std::ostream& out) {
    nlohmann::json doc;
    doc["config"] = {{"n", config.n},
                     {"mqam", config.mqam},
                     {"s", config.cutoff},
                     {"ebn0_grid", config.ebn0_grid},
                     {"trials_per_point", config.trials_per_point},
                     {"master_seed", config.master_seed},
                     {"workers", config.workers}};
    nlohmann::json rows = nlohmann::json::array();
    for (const BlerPoint& p : points) {
        rows.push_back({{"ebn0_db", p.ebn0_db},
                        {"trials", p.trials},
                        {"block_errors", p.block_errors},
                        {"mismatches", p.mismatches},
                        {"abandonments", p.abandonments},
                        {"bler", p.bler},
                        {"mean_queries", p.mean_queries},
                        {"mean_patterns_valid", p.mean_patterns_valid},
                        {"uncoded_block_errors", p.uncoded_block_errors}});
    }
    doc["points"] = std::move(rows);
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write_json: stream write failed");
    }
}

std::string default_output_name(const SimConfig& config, const std::string& extension) {
    const std::size_t block = std::size_t{1} << config.n;
    const unsigned group = 2 * qam_bits_per_axis(config.mqam);
    const std::size_t symbols = (block + group - 1) / group;
    const std::size_t s_eff = std::min<std::size_t>(config.cutoff, symbols);
    return "bler_N" + std::to_string(block) + "_M" + std::to_string(config.mqam) + "_S" +
           std::to_string(s_eff) + "." + extension;
}

}  // namespace grandmp
