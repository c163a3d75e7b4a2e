#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grandmp/channel.hpp"
#include "grandmp/decoder.hpp"
#include "grandmp/polar.hpp"
#include "grandmp/rng.hpp"

namespace grandmp {

struct SimConfig {
    int n = 5;
    unsigned mqam = 4;
    unsigned cutoff = 8;
    std::vector<double> ebn0_grid;
    std::size_t trials_per_point = 10000;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
};

enum class TrialKind { success, mismatch, abandoned };

struct TrialOutcome {
    TrialKind kind = TrialKind::success;
    std::size_t queries_checked = 0;
    std::size_t patterns_valid = 0;
    bool uncoded_error = false;  // hard decisions alone misread the block
};

struct BlerPoint {
    double ebn0_db = 0.0;
    std::size_t trials = 0;
    std::size_t block_errors = 0;  // mismatches + abandonments
    std::size_t mismatches = 0;
    std::size_t abandonments = 0;
    double bler = 0.0;
    double mean_queries = 0.0;
    double mean_patterns_valid = 0.0;
    std::size_t uncoded_block_errors = 0;  // same noise, no error correction
};

/// One end-to-end block: random info bits, encode, modulate, add noise,
/// decode, compare. The rng stream must be exclusive to this trial.
TrialOutcome run_trial(const Decoder& decoder, const ChannelParams& params, SplitMix64& rng);

/// Monte Carlo sweep over config.ebn0_grid. Trial t of grid point p draws its
/// noise from a stream derived from (master_seed, p, t), and per-point tallies
/// are integer sums, so the output is byte-identical for any worker count.
std::vector<BlerPoint> run_bler(const PolarCode& code, const SimConfig& config);

void write_csv(const std::vector<BlerPoint>& points, std::ostream& out);
void write_json(const SimConfig& config, const std::vector<BlerPoint>& points,
                std::ostream& out);

/// bler_N{N}_M{M}_S{S}.{extension}; S is the effective (clamped) cutoff.
std::string default_output_name(const SimConfig& config, const std::string& extension);

}  // namespace grandmp
