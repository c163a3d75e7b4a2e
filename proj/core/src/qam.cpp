#include "grandmp/qam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace grandmp {

namespace {

unsigned gray_decode(unsigned g) {
    unsigned v = g;
    v ^= v >> 1;
    v ^= v >> 2;
    v ^= v >> 4;
    return v;
}

int sign_or_plus(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace

unsigned qam_bits_per_axis(unsigned order) {
    switch (order) {
        case 4: return 1;
        case 16: return 2;
        case 64: return 3;
        case 256: return 4;
        case 1024: return 5;
        case 4096: return 6;
        default:
            throw std::invalid_argument("unsupported QAM order " + std::to_string(order));
    }
}

Constellation::Constellation(unsigned order) : order_(order), m_(qam_bits_per_axis(order)) {
    const unsigned levels = 1u << m_;
    max_amp_ = static_cast<int>(levels) - 1;
    points_.resize(order_);
    for (unsigned label = 0; label < order_; ++label) {
        const unsigned hi = label >> m_;            // first m bits
        const unsigned lo = label & (levels - 1);   // last m bits
        const int i_amp = 2 * static_cast<int>(gray_decode(hi)) - max_amp_;
        const int q_amp = 2 * static_cast<int>(gray_decode(lo)) - max_amp_;
        points_[label] = Point{i_amp, q_amp};
    }
}

Point Constellation::point_at(unsigned label) const {
    if (label >= order_) {
        throw std::out_of_range("Constellation: label " + std::to_string(label) +
                                " out of range for order " + std::to_string(order_));
    }
    return points_[label];
}

bool Constellation::contains(Point p) const {
    auto on_axis = [this](int c) {
        return (c % 2 != 0) && c >= -max_amp_ && c <= max_amp_;
    };
    return on_axis(p.in_phase) && on_axis(p.quadrature);
}

unsigned Constellation::label_of(Point p) const {
    if (!contains(p)) {
        throw std::invalid_argument("Constellation: point (" + std::to_string(p.in_phase) +
                                    ", " + std::to_string(p.quadrature) +
                                    ") not in constellation");
    }
    auto axis_bits = [this](int amp) {
        const unsigned index = static_cast<unsigned>((amp + max_amp_) / 2);
        return index ^ (index >> 1);  // reflected Gray encode
    };
    return (axis_bits(p.in_phase) << m_) | axis_bits(p.quadrature);
}

double Constellation::average_energy() const {
    return 2.0 * (static_cast<double>(order_) - 1.0) / 3.0;
}

std::vector<Point> bits_to_symbols(const BitVector& bits, const Constellation& cst) {
    const std::size_t group = cst.bits_per_symbol();
    const std::size_t count = (bits.size() + group - 1) / group;
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t sym = 0; sym < count; ++sym) {
        unsigned label = 0;
        for (std::size_t j = 0; j < group; ++j) {
            const std::size_t pos = sym * group + j;
            const bool bit = pos < bits.size() ? bits.get(pos) : false;  // zero padding
            label = (label << 1) | static_cast<unsigned>(bit);
        }
        out.push_back(cst.point_at(label));
    }
    return out;
}

BitVector symbols_to_bits(const std::vector<Point>& points, const Constellation& cst,
                          std::size_t n_bits) {
    const std::size_t group = cst.bits_per_symbol();
    if (n_bits > group * points.size()) {
        throw std::invalid_argument("symbols_to_bits: target length exceeds symbol capacity");
    }
    BitVector out(n_bits);
    for (std::size_t sym = 0; sym < points.size(); ++sym) {
        const unsigned label = cst.label_of(points[sym]);
        for (std::size_t j = 0; j < group; ++j) {
            const std::size_t pos = sym * group + j;
            if (pos >= n_bits) return out;
            out.set(pos, ((label >> (group - 1 - j)) & 1u) != 0);
        }
    }
    return out;
}

Point hard_demodulate(const ReceivedSymbol& r, const Constellation& cst) {
    const int max_amp = cst.max_amplitude();
    auto nearest = [max_amp](double x) {
        // Level index runs 0 .. 2^m − 1, which numerically equals max_amp.
        long idx = std::lround((x + max_amp) / 2.0);
        if (idx < 0) idx = 0;
        if (idx > max_amp) idx = max_amp;
        return static_cast<int>(2 * idx - max_amp);
    };
    return Point{nearest(r.in_phase), nearest(r.quadrature)};
}

double likelihood(const ReceivedSymbol& r, const Point& s) {
    const double d1 = 1.0 - std::abs(static_cast<double>(s.in_phase) - r.in_phase);
    const double d2 = 1.0 - std::abs(static_cast<double>(s.quadrature) - r.quadrature);
    return std::sqrt(d1 * d1 + d2 * d2);
}

std::vector<Point> nne_candidates(const ReceivedSymbol& r, const Point& s,
                                  const Constellation& cst) {
    const int di = sign_or_plus(static_cast<double>(s.in_phase) - r.in_phase);
    const int dq = sign_or_plus(static_cast<double>(s.quadrature) - r.quadrature);
    const Point horizontal{s.in_phase - 2 * di, s.quadrature};
    const Point vertical{s.in_phase, s.quadrature - 2 * dq};
    const Point diagonal{s.in_phase - 2 * di, s.quadrature - 2 * dq};
    std::vector<Point> out;
    out.reserve(3);
    for (const Point& cand : {horizontal, vertical, diagonal}) {
        if (cst.contains(cand)) out.push_back(cand);
    }
    return out;
}

SymbolReliability reliability_of(const ReceivedSymbol& r, const Constellation& cst) {
    SymbolReliability sr;
    sr.hard = hard_demodulate(r, cst);
    sr.likelihood = likelihood(r, sr.hard);
    sr.candidates.push_back(sr.hard);
    for (const Point& cand : nne_candidates(r, sr.hard, cst)) {
        sr.candidates.push_back(cand);
    }
    return sr;
}

}  // namespace grandmp
