#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <vector>

#include "walshtf/phaseplane.hpp"
#include "walshtf/step_function.hpp"
#include "walshtf/walsh.hpp"

namespace walshtf {

/*
 * Bilinear and trilinear quartile operators.  Every quartile P contributes
 * through its three sub-tiles P_1, P_2, P_3; the bilinear transform reads
 * two functions against the first two packets and emits the third,
 *
 *     B(f_1, f_2) = sum_P |I_P|^{-1/2} <f_1, phi_{P_1}> <f_2, phi_{P_2}> phi_{P_3},
 *
 * and the composed (two-collection) operator applies an inner transform
 * restricted to the frequency window of an outer sub-tile.  All sums here
 * are exact.
 */

struct QuartileLess {
    bool operator()(const Quartile& a, const Quartile& b) const {
        return quartile_before(a, b);
    }
};

// Coefficient sequence a_{P_j} indexed by quartile, for a fixed slot j.
template <class S>
struct BasicCoeffSeq {
    int slot = 1;
    std::map<Quartile, S, QuartileLess> entries;

    S at(const Quartile& q) const {
        auto it = entries.find(q);
        return it == entries.end() ? S{} : it->second;
    }
};

using CoeffSeq = BasicCoeffSeq<ExactScalar>;
using CoeffSeqD = BasicCoeffSeq<double>;

// a_{P_j} = <f, phi_{P_j}> for every quartile in the collection.
inline CoeffSeq coefficients(const std::vector<Quartile>& coll,
                             const StepFunction& f, int slot) {
    if (slot < 1 || slot > 3)
        throw PreconditionViolated("coefficient slot must be 1, 2, or 3");
    CoeffSeq out;
    out.slot = slot;
    for (const auto& p : coll)
        out.entries[p] = packet_inner_product(f, p.subtile(slot));
    return out;
}

// <phi_a, phi_b> for arbitrary tiles, by materializing one packet.
inline ExactScalar packet_pair_inner(const Tile& a, const Tile& b) {
    if (interval_disjoint(a.time(), b.time())) return ExactScalar();
    long K = std::max(packet_resolution(a), packet_resolution(b));
    return packet_inner_product(wave_packet(a, K), b);
}

namespace detail {

inline DyadicInterval join_two(const DyadicInterval& a, const DyadicInterval& b) {
    auto j = common_ancestor(a, b);
    if (!j) throw WindowTooSmall("windows have no common dyadic ancestor");
    return *j;
}

inline DyadicInterval join_windows(std::initializer_list<DyadicInterval> ws) {
    const DyadicInterval* it = ws.begin();
    DyadicInterval acc = *it;
    for (++it; it != ws.end(); ++it) acc = join_two(acc, *it);
    return acc;
}

inline void require_supports(const std::vector<Quartile>& coll,
                             const DyadicInterval& window) {
    for (const auto& p : coll)
        if (!interval_subset(p.time(), window))
            throw WindowTooSmall("quartile support escapes the window");
}

inline long output_resolution(const std::vector<Quartile>& coll, long base,
                              int emit_slot) {
    long K = base;
    for (const auto& p : coll)
        K = std::max(K, packet_resolution(p.subtile(emit_slot)));
    return K;
}

}  // namespace detail

inline StepFunction bht(std::vector<Quartile> coll, const StepFunction& f1,
                        const StepFunction& f2) {
    canonicalize_collection(coll);
    DyadicInterval w = detail::join_windows({f1.window, f2.window});
    detail::require_supports(coll, w);
    StepFunction out(
        w, detail::output_resolution(coll, std::max(f1.resolution, f2.resolution), 3));
    for (const auto& p : coll) {
        ExactScalar c = ExactScalar::half_power(p.k) *
                        packet_inner_product(f1, p.subtile(1)) *
                        packet_inner_product(f2, p.subtile(2));
        accumulate_packet(out, p.subtile(3), c);
    }
    return out;
}

// The inner transform of the composed operator: only quartiles whose third
// frequency window sits inside freq(p) contribute.
inline StepFunction bht_restricted(const Tile& p, std::vector<Quartile> coll,
                                   const StepFunction& f1, const StepFunction& f2) {
    canonicalize_collection(coll);
    DyadicInterval w = detail::join_windows({f1.window, f2.window});
    detail::require_supports(coll, w);
    long K = std::max(f1.resolution, f2.resolution);
    for (const auto& q : coll)
        if (interval_subset(q.subtile(3).freq(), p.freq()))
            K = std::max(K, packet_resolution(q.subtile(3)));
    StepFunction out(w, K);
    for (const auto& q : coll) {
        if (!interval_subset(q.subtile(3).freq(), p.freq())) continue;
        ExactScalar c = ExactScalar::half_power(q.k) *
                        packet_inner_product(f1, q.subtile(1)) *
                        packet_inner_product(f2, q.subtile(2));
        accumulate_packet(out, q.subtile(3), c);
    }
    return out;
}

/*
 * Composed trilinear operator, first component: the inner transform is
 * restricted to the frequency window of the outer first sub-tile and read
 * against phi_{P_1}, while f_3 pairs with phi_{P_2}:
 *
 *     T'(f_1,f_2,f_3) = sum_P |I_P|^{-1/2} <B_{P_1}(f_1,f_2), phi_{P_1}>
 *                                          <f_3, phi_{P_2}> phi_{P_3}.
 */
inline StepFunction biest_prime(std::vector<Quartile> outer,
                                std::vector<Quartile> inner,
                                const StepFunction& f1, const StepFunction& f2,
                                const StepFunction& f3) {
    canonicalize_collection(outer);
    canonicalize_collection(inner);
    DyadicInterval w =
        detail::join_windows({f1.window, f2.window, f3.window});
    detail::require_supports(outer, w);
    detail::require_supports(inner, w);
    long base = std::max({f1.resolution, f2.resolution, f3.resolution});
    StepFunction out(w, detail::output_resolution(outer, base, 3));
    for (const auto& p : outer) {
        StepFunction b = bht_restricted(p.subtile(1), inner, f1, f2);
        ExactScalar c = ExactScalar::half_power(p.k) *
                        packet_inner_product(b, p.subtile(1)) *
                        packet_inner_product(f3, p.subtile(2));
        accumulate_packet(out, p.subtile(3), c);
    }
    return out;
}

// Second component: the inner transform acts on (f_2, f_3) inside the
// frequency window of the outer second sub-tile.
inline StepFunction biest_second(std::vector<Quartile> outer,
                                 std::vector<Quartile> inner,
                                 const StepFunction& f1, const StepFunction& f2,
                                 const StepFunction& f3) {
    canonicalize_collection(outer);
    canonicalize_collection(inner);
    DyadicInterval w =
        detail::join_windows({f1.window, f2.window, f3.window});
    detail::require_supports(outer, w);
    detail::require_supports(inner, w);
    long base = std::max({f1.resolution, f2.resolution, f3.resolution});
    StepFunction out(w, detail::output_resolution(outer, base, 3));
    for (const auto& p : outer) {
        StepFunction b = bht_restricted(p.subtile(2), inner, f2, f3);
        ExactScalar c = ExactScalar::half_power(p.k) *
                        packet_inner_product(f1, p.subtile(1)) *
                        packet_inner_product(b, p.subtile(2));
        accumulate_packet(out, p.subtile(3), c);
    }
    return out;
}

inline StepFunction biest(const std::vector<Quartile>& outer,
                          const std::vector<Quartile>& inner,
                          const StepFunction& f1, const StepFunction& f2,
                          const StepFunction& f3) {
    return biest_prime(outer, inner, f1, f2, f3) +
           biest_second(outer, inner, f1, f2, f3);
}

// A contributing outer/inner pair: freq(Q_3) inside freq(P_s) and the two
// packets not orthogonal.  `ip` is the bare <phi_{P_s}, phi_{Q_3}>.
struct QuartilePair {
    std::size_t p_index = 0;
    std::size_t q_index = 0;
    ExactScalar ip;
};

/*
 * All pairs (P, Q) with freq(Q_3) inside freq(P_{p_slot}) and nonzero
 * <phi_{P_{p_slot}}, phi_{Q_3}>.  Outer quartiles are bucketed by the exact
 * frequency interval of their slot tile, so each Q only walks the ancestors
 * of its own frequency interval instead of scanning the whole collection.
 */
inline std::vector<QuartilePair> quartile_pairs(const std::vector<Quartile>& outer,
                                                const std::vector<Quartile>& inner,
                                                int p_slot) {
    if (p_slot < 1 || p_slot > 3)
        throw PreconditionViolated("pair slot must be 1, 2, or 3");
    std::map<DyadicInterval, std::vector<std::size_t>, IntervalLess> buckets;
    for (std::size_t i = 0; i < outer.size(); ++i)
        buckets[outer[i].subtile(p_slot).freq()].push_back(i);
    std::vector<long> scales;
    for (const auto& [freq, bucket] : buckets)
        if (scales.empty() || scales.back() != freq.scale)
            scales.push_back(freq.scale);
    std::vector<QuartilePair> out;
    for (std::size_t j = 0; j < inner.size(); ++j) {
        Tile q3 = inner[j].subtile(3);
        DyadicInterval freq = q3.freq();
        for (long s : scales) {
            if (s < freq.scale) continue;
            auto it = buckets.find(freq.ancestor_at(s));
            if (it == buckets.end()) continue;
            for (std::size_t i : it->second) {
                ExactScalar ip = packet_pair_inner(outer[i].subtile(p_slot), q3);
                if (!ip.is_zero()) out.push_back({i, j, ip});
            }
        }
    }
    return out;
}

// Quadrilinear pairings evaluated as direct scalar sums over contributing
// pairs, without materializing any intermediate transform.
inline ExactScalar quad_prime(const std::vector<Quartile>& outer,
                              const std::vector<Quartile>& inner,
                              const StepFunction& f1, const StepFunction& f2,
                              const StepFunction& f3, const StepFunction& f4) {
    std::vector<ExactScalar> u(inner.size()), v(outer.size());
    for (std::size_t j = 0; j < inner.size(); ++j)
        u[j] = packet_inner_product(f1, inner[j].subtile(1)) *
               packet_inner_product(f2, inner[j].subtile(2)) *
               ExactScalar::half_power(inner[j].k);
    for (std::size_t i = 0; i < outer.size(); ++i)
        v[i] = packet_inner_product(f3, outer[i].subtile(2)) *
               packet_inner_product(f4, outer[i].subtile(3)) *
               ExactScalar::half_power(outer[i].k);
    ExactScalar total;
    for (const auto& pr : quartile_pairs(outer, inner, 1))
        total += pr.ip * u[pr.q_index] * v[pr.p_index];
    return total;
}

inline ExactScalar quad_second(const std::vector<Quartile>& outer,
                               const std::vector<Quartile>& inner,
                               const StepFunction& f1, const StepFunction& f2,
                               const StepFunction& f3, const StepFunction& f4) {
    std::vector<ExactScalar> u(inner.size()), v(outer.size());
    for (std::size_t j = 0; j < inner.size(); ++j)
        u[j] = packet_inner_product(f2, inner[j].subtile(1)) *
               packet_inner_product(f3, inner[j].subtile(2)) *
               ExactScalar::half_power(inner[j].k);
    for (std::size_t i = 0; i < outer.size(); ++i)
        v[i] = packet_inner_product(f1, outer[i].subtile(1)) *
               packet_inner_product(f4, outer[i].subtile(3)) *
               ExactScalar::half_power(outer[i].k);
    ExactScalar total;
    for (const auto& pr : quartile_pairs(outer, inner, 2))
        total += pr.ip * u[pr.q_index] * v[pr.p_index];
    return total;
}

struct QuadForm {
    ExactScalar prime;
    ExactScalar second;
    ExactScalar total;
};

inline QuadForm quad_form(const std::vector<Quartile>& outer,
                          const std::vector<Quartile>& inner,
                          const StepFunction& f1, const StepFunction& f2,
                          const StepFunction& f3, const StepFunction& f4) {
    QuadForm out;
    out.prime = quad_prime(outer, inner, f1, f2, f3, f4);
    out.second = quad_second(outer, inner, f1, f2, f3, f4);
    out.total = out.prime + out.second;
    return out;
}

// Trilinear pairing of the one-collection transform:
// sum_P |I_P|^{-1/2} prod_j <f_j, phi_{P_j}>.
inline ExactScalar bht_form(const std::vector<Quartile>& coll,
                            const StepFunction& f1, const StepFunction& f2,
                            const StepFunction& f3) {
    ExactScalar total;
    for (const auto& p : coll)
        total += ExactScalar::half_power(p.k) *
                 packet_inner_product(f1, p.subtile(1)) *
                 packet_inner_product(f2, p.subtile(2)) *
                 packet_inner_product(f3, p.subtile(3));
    return total;
}

/*
 * Reversed-order coefficients: summing the first component over the outer
 * collection first turns the quadrilinear pairing into
 *
 *     sum_Q |I_Q|^{-1/2} a1_{Q_1} a2_{Q_2} a3_{Q_3},
 *
 * with a3_{Q_3} below absorbing the whole outer sum.
 */
inline CoeffSeq a3_sequence(const std::vector<Quartile>& outer,
                            const std::vector<Quartile>& inner,
                            const StepFunction& f3, const StepFunction& f4) {
    std::vector<ExactScalar> v(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i)
        v[i] = packet_inner_product(f3, outer[i].subtile(2)) *
               packet_inner_product(f4, outer[i].subtile(3)) *
               ExactScalar::half_power(outer[i].k);
    CoeffSeq out;
    out.slot = 3;
    for (const auto& q : inner) out.entries[q] = ExactScalar();
    for (const auto& pr : quartile_pairs(outer, inner, 1))
        out.entries[inner[pr.q_index]] += pr.ip * v[pr.p_index];
    return out;
}

// Adjoint of the one-collection transform that emits the first packet:
// sum_P |I_P|^{-1/2} <f_3, phi_{P_2}> <f_4, phi_{P_3}> phi_{P_1}.
inline StepFunction bht_adjoint(std::vector<Quartile> coll,
                                const StepFunction& f3, const StepFunction& f4) {
    canonicalize_collection(coll);
    DyadicInterval w = detail::join_windows({f3.window, f4.window});
    detail::require_supports(coll, w);
    StepFunction out(
        w, detail::output_resolution(coll, std::max(f3.resolution, f4.resolution), 1));
    for (const auto& p : coll) {
        ExactScalar c = ExactScalar::half_power(p.k) *
                        packet_inner_product(f3, p.subtile(2)) *
                        packet_inner_product(f4, p.subtile(3));
        accumulate_packet(out, p.subtile(1), c);
    }
    return out;
}

}  // namespace walshtf
