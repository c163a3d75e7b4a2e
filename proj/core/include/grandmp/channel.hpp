#pragma once

#include <vector>

#include "grandmp/qam.hpp"
#include "grandmp/rng.hpp"

namespace grandmp {

/// One AWGN operating point. The lattice scale factor d converts odd-integer
/// coordinates to physical amplitudes; sigma is the per-axis noise deviation
/// already divided by d, so everything downstream stays in lattice units with
/// grid spacing 2.
struct ChannelParams {
    unsigned order = 0;         // M
    unsigned bits_per_axis = 0; // m
    double eb = 1.0;            // energy per bit
    double ebn0_db = 0.0;
    double d = 0.0;             // sqrt(3·m·eb / (M−1))
    double sigma = 0.0;         // sqrt(N0/2) / d, with N0 = eb / 10^(ebn0_db/10)
};

/// Half minimum distance of the physical constellation at energy eb per bit.
double min_distance(unsigned order, double eb);

/// Per-axis noise deviation in lattice units for the given operating point.
double derive_sigma(unsigned order, double ebn0_db, double eb);

ChannelParams make_channel(unsigned order, double ebn0_db, double eb = 1.0);

/// Add i.i.d. zero-mean Gaussian noise (deviation params.sigma) to each
/// coordinate of each point. Deterministic given the rng state.
std::vector<ReceivedSymbol> transmit(const std::vector<Point>& points,
                                     const ChannelParams& params, SplitMix64& rng);

}  // namespace grandmp
