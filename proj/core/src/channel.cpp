#include "grandmp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace grandmp {

double min_distance(unsigned order, double eb) {
    const unsigned m = qam_bits_per_axis(order);
    if (eb <= 0.0) {
        throw std::invalid_argument("min_distance: eb must be positive");
    }
    return std::sqrt(3.0 * m * eb / (static_cast<double>(order) - 1.0));
}

double derive_sigma(unsigned order, double ebn0_db, double eb) {
    const double d = min_distance(order, eb);
    const double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(n0 / 2.0) / d;
}

ChannelParams make_channel(unsigned order, double ebn0_db, double eb) {
    ChannelParams p;
    p.order = order;
    p.bits_per_axis = qam_bits_per_axis(order);
    p.eb = eb;
    p.ebn0_db = ebn0_db;
    p.d = min_distance(order, eb);
    p.sigma = derive_sigma(order, ebn0_db, eb);
    return p;
}

std::vector<ReceivedSymbol> transmit(const std::vector<Point>& points,
                                     const ChannelParams& params, SplitMix64& rng) {
    std::vector<ReceivedSymbol> out;
    out.reserve(points.size());
    for (const Point& p : points) {
        const auto [g1, g2] = rng.next_gaussian_pair();
        out.push_back(ReceivedSymbol{p.in_phase + params.sigma * g1,
                                     p.quadrature + params.sigma * g2});
    }
    return out;
}

}  // namespace grandmp
