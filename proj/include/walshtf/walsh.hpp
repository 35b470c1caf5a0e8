#pragma once

// Walsh functions and Walsh wave packets.
//
// w_0 is the indicator of [0,1); the recursion w_{2l} = [w_l | w_l] and
// w_{2l+1} = [w_l | -w_l] (left and right halves) has the closed form
//
//   sign of w_l on cell m of 2^R equal cells = (-1)^popcount(l & bitrev_R(m))
//
// because the recursion consumes one low bit of l per halving of [0,1).
// The pointwise product rule w_a w_b = w_{a xor b} follows directly.
//
// The wave packet of a tile P = [2^-k n, 2^-k (n+1)) x [2^k l, 2^k (l+1))
// is 2^{k/2} w_l(2^k x - n): unit L^2 norm, supported on the time interval.

#include <bit>
#include <cstdint>

#include "walshtf/phaseplane.hpp"
#include "walshtf/step_function.hpp"

namespace walshtf {

inline std::uint64_t bit_reverse(std::uint64_t x, long bits) {
    std::uint64_t r = 0;
    for (long i = 0; i < bits; ++i) {
        r = (r << 1) | (x & 1);
        x >>= 1;
    }
    return r;
}

// Sign of w_l on cell m of [0,1) split into 2^depth cells; needs l < 2^depth.
inline int walsh_sign(long l, long depth, long m) {
    std::uint64_t mask = static_cast<std::uint64_t>(l) &
                         bit_reverse(static_cast<std::uint64_t>(m), depth);
    return (std::popcount(mask) & 1) ? -1 : 1;
}

// Smallest pattern depth resolving w_l: l < 2^depth.
inline long walsh_depth(long l) {
    long d = 0;
    while ((1L << d) <= l) ++d;
    return d;
}

// w_l on [0,1) as a step function at the given resolution.
inline StepFunction walsh_function(long l, long resolution) {
    if (l < 0) throw NegativeFrequency("walsh index is negative");
    if (resolution < walsh_depth(l))
        throw ResolutionTooCoarse("resolution cannot resolve this walsh function");
    StepFunction f({0, 0}, resolution);
    for (long c = 0; c < f.cell_count(); ++c)
        f.values[static_cast<std::size_t>(c)] =
            ExactScalar(walsh_sign(l, resolution, c));
    return f;
}

// Smallest resolution on which the wave packet of t is constant per cell.
inline long packet_resolution(const Tile& t) { return t.k + walsh_depth(t.l); }

// Wave packet on its own time interval as window.
inline StepFunction wave_packet(const Tile& t, long resolution) {
    if (resolution < packet_resolution(t))
        throw ResolutionTooCoarse("resolution cannot resolve this wave packet");
    StepFunction f(t.time(), resolution);
    long depth = resolution - t.k;
    ExactScalar amp = ExactScalar::half_power(t.k);
    for (long c = 0; c < f.cell_count(); ++c)
        f.values[static_cast<std::size_t>(c)] =
            walsh_sign(t.l, depth, c) > 0 ? amp : -amp;
    return f;
}

// <f, packet(t)> without materializing the packet.
inline ExactScalar packet_inner_product(const StepFunction& f, const Tile& t) {
    long K = std::max(f.resolution, packet_resolution(t));
    if (interval_disjoint(f.window, t.time())) return ExactScalar();
    long depth = K - t.k;
    long lo = t.time().index << (t.time().scale + K);  // first cell of the support
    long cells = 1L << (t.time().scale + K);
    ExactScalar sum;
    for (long c = 0; c < cells; ++c) {
        const ExactScalar& v = f.value_at(lo + c, K);
        if (v.is_zero()) continue;
        if (walsh_sign(t.l, depth, c) > 0)
            sum += v;
        else
            sum -= v;
    }
    return sum * ExactScalar::half_power(t.k) * ExactScalar::pow2(-K);
}

// target += coeff * packet(t); the target window must contain the support.
inline void accumulate_packet(StepFunction& target, const Tile& t,
                              const ExactScalar& coeff) {
    if (coeff.is_zero()) return;
    if (!interval_subset(t.time(), target.window))
        throw WindowTooSmall("packet support escapes the target window");
    long K = target.resolution;
    if (K < packet_resolution(t))
        throw ResolutionTooCoarse("target resolution cannot hold this packet");
    long depth = K - t.k;
    long lo = t.time().index << (t.time().scale + K);
    long cells = 1L << (t.time().scale + K);
    ExactScalar amp = coeff * ExactScalar::half_power(t.k);
    long base = lo - target.first_cell();
    for (long c = 0; c < cells; ++c) {
        auto& v = target.values[static_cast<std::size_t>(base + c)];
        if (walsh_sign(t.l, depth, c) > 0)
            v += amp;
        else
            v -= amp;
    }
}

// Multiply by the periodic sign pattern of w_l(2^k x); the pattern repeats
// with period 2^-k and needs resolution - k >= depth(l).
inline StepFunction walsh_modulate(const StepFunction& f, long l, long k) {
    if (l < 0) throw NegativeFrequency("walsh index is negative");
    long depth = f.resolution - k;
    if (depth < walsh_depth(l))
        throw ResolutionTooCoarse("resolution cannot resolve the modulation");
    StepFunction out(f.window, f.resolution);
    long period = 1L << depth;
    long lo = f.first_cell();
    for (long c = 0; c < f.cell_count(); ++c) {
        long g = lo + c;
        long m = ((g % period) + period) % period;  // floor mod for negatives
        out.values[static_cast<std::size_t>(c)] =
            walsh_sign(l, depth, m) > 0 ? f.values[static_cast<std::size_t>(c)]
                                        : -f.values[static_cast<std::size_t>(c)];
    }
    return out;
}

}  // namespace walshtf
