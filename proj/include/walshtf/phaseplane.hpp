#pragma once

// Tiles, quartiles, and trees of the Walsh phase plane.
//
// A tile is a dyadic rectangle [2^-k n, 2^-k (n+1)) x [2^k l, 2^k (l+1))
// of area one with nonnegative frequency.  A quartile has the same time
// interval but a frequency block of four tile heights; its three lowest
// quarters are the sub-tiles P_1, P_2, P_3 used by every operator here.
//
// Tile order: a < b iff the time interval of a is strictly inside that of
// b while the frequency interval of b sits inside that of a.  Two distinct
// tiles intersect as rectangles exactly when they are comparable.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <vector>

#include "walshtf/dyadic_interval.hpp"
#include "walshtf/errors.hpp"
#include "walshtf/rng.hpp"

namespace walshtf {

struct Tile {
    long k = 0;  // time interval [2^-k n, 2^-k (n+1))
    long n = 0;
    long l = 0;  // frequency interval [2^k l, 2^k (l+1)), l >= 0

    Tile() = default;
    Tile(long k_, long n_, long l_) : k(k_), n(n_), l(l_) {
        if (l < 0) throw NegativeFrequency("tile frequency index is negative");
    }

    DyadicInterval time() const { return {-k, n}; }
    DyadicInterval freq() const { return {k, l}; }

    friend bool operator==(const Tile&, const Tile&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Tile& t) {
        return os << "tile(k=" << t.k << ",n=" << t.n << ",l=" << t.l << ")";
    }
};

struct Quartile {
    long k = 0;  // time interval [2^-k n, 2^-k (n+1))
    long n = 0;
    long l = 0;  // frequency interval [2^{k+2} l, 2^{k+2} (l+1)), l >= 0

    Quartile() = default;
    Quartile(long k_, long n_, long l_) : k(k_), n(n_), l(l_) {
        if (l < 0) throw NegativeFrequency("quartile frequency index is negative");
    }

    DyadicInterval time() const { return {-k, n}; }
    DyadicInterval freq() const { return {k + 2, l}; }

    // j = 1, 2, 3: the j-th quarter from the bottom of the frequency block.
    Tile subtile(int j) const { return Tile(k, n, 4 * l + j - 1); }

    friend bool operator==(const Quartile&, const Quartile&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Quartile& q) {
        return os << "quartile(k=" << q.k << ",n=" << q.n << ",l=" << q.l << ")";
    }
};

inline bool tile_lt(const Tile& a, const Tile& b) {
    return interval_proper_subset(a.time(), b.time()) &&
           interval_subset(b.freq(), a.freq());
}

inline bool tile_le(const Tile& a, const Tile& b) { return a == b || tile_lt(a, b); }

inline bool tile_intersects(const Tile& a, const Tile& b) {
    return !interval_disjoint(a.time(), b.time()) &&
           !interval_disjoint(a.freq(), b.freq());
}

inline bool tile_disjoint(const Tile& a, const Tile& b) {
    return !tile_intersects(a, b);
}

// Canonical collection order: time scale, then time position, then frequency.
inline bool quartile_before(const Quartile& a, const Quartile& b) {
    if (a.time().scale != b.time().scale) return a.time().scale < b.time().scale;
    if (a.n != b.n) return a.n < b.n;
    return a.l < b.l;
}

inline void canonicalize_collection(std::vector<Quartile>& coll) {
    std::sort(coll.begin(), coll.end(), quartile_before);
    coll.erase(std::unique(coll.begin(), coll.end()), coll.end());
}

// For distinct quartiles, comparability in one sub-tile slot forces
// disjointness in every other slot.  Returns the truth of that implication
// for the pair (a, b) and slots (i, j); equal quartiles satisfy it by
// convention since distinct sub-tiles of one quartile are disjoint.
inline bool check_lacunarity(const Quartile& a, const Quartile& b, int i, int j) {
    if (a == b) return true;
    if (!tile_le(a.subtile(i), b.subtile(i))) return true;
    return tile_disjoint(a.subtile(j), b.subtile(j));
}

// A tree of kind j with top T collects quartiles P with P_j <= T_j.  The
// top itself does not have to be a member.
struct Tree {
    Quartile top;
    int kind = 1;
    std::vector<Quartile> members;

    Tree() = default;
    Tree(const Quartile& top_, int kind_, std::vector<Quartile> members_)
        : top(top_), kind(kind_), members(std::move(members_)) {
        if (kind < 1 || kind > 3)
            throw PreconditionViolated("tree kind must be 1, 2 or 3");
        for (const auto& p : members)
            if (!tile_le(p.subtile(kind), top.subtile(kind)))
                throw PreconditionViolated("tree member escapes its top");
        std::sort(members.begin(), members.end(), quartile_before);
    }

    ExactScalar top_length() const { return top.time().measure(); }
};

inline Tree maximal_tree(const Quartile& top, int kind,
                         const std::vector<Quartile>& coll) {
    std::vector<Quartile> members;
    for (const auto& p : coll)
        if (tile_le(p.subtile(kind), top.subtile(kind))) members.push_back(p);
    return Tree(top, kind, std::move(members));
}

// Keep the quartiles whose first sub-tile sits below the third sub-tile of
// some member of dis; the third sub-tiles of dis must be pairwise disjoint.
inline std::vector<Quartile> biest_restrict(const std::vector<Quartile>& coll,
                                            const std::vector<Quartile>& dis) {
    for (std::size_t x = 0; x < dis.size(); ++x)
        for (std::size_t y = x + 1; y < dis.size(); ++y)
            if (!tile_disjoint(dis[x].subtile(3), dis[y].subtile(3)))
                throw DisjointnessViolation(
                    "third sub-tiles of the restricting family intersect");
    std::vector<Quartile> out;
    for (const auto& p : coll)
        for (const auto& q : dis)
            if (tile_le(p.subtile(1), q.subtile(3))) {
                out.push_back(p);
                break;
            }
    canonicalize_collection(out);
    return out;
}

struct QuartileGenConfig {
    std::uint64_t seed = 0;
    DyadicInterval window{0, 0};  // time intervals must fit inside
    long kmin = 0;                // time scales: lengths 2^-k, kmin <= k <= kmax
    long kmax = 0;
    long freq_max = 15;           // quartile frequency index bound (inclusive)
    std::size_t count = 0;
};

// Distinct random quartiles with time intervals inside the window.  Returns
// fewer than count when the admissible space is (nearly) exhausted.
inline std::vector<Quartile> gen_quartiles(const QuartileGenConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<Quartile> out;
    std::size_t attempts = 0, cap = 64 * cfg.count + 256;
    while (out.size() < cfg.count && attempts++ < cap) {
        long k = rng.range(cfg.kmin, cfg.kmax);
        if (-k > cfg.window.scale) continue;  // time interval longer than window
        long span = 1L << (cfg.window.scale + k);  // positions inside window
        long base = cfg.window.index * span;
        long n = base + rng.range(0, span - 1);
        long l = rng.range(0, cfg.freq_max);
        Quartile q(k, n, l);
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    canonicalize_collection(out);
    return out;
}

// Random family whose third sub-tiles are pairwise disjoint, built by
// greedy rejection.
inline std::vector<Quartile> gen_disjoint_family(const QuartileGenConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<Quartile> out;
    std::size_t attempts = 0, cap = 64 * cfg.count + 256;
    while (out.size() < cfg.count && attempts++ < cap) {
        long k = rng.range(cfg.kmin, cfg.kmax);
        if (-k > cfg.window.scale) continue;
        long span = 1L << (cfg.window.scale + k);
        long base = cfg.window.index * span;
        long n = base + rng.range(0, span - 1);
        long l = rng.range(0, cfg.freq_max);
        Quartile q(k, n, l);
        bool ok = true;
        for (const auto& r : out)
            if (!tile_disjoint(q.subtile(3), r.subtile(3))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(q);
    }
    canonicalize_collection(out);
    return out;
}

}  // namespace walshtf
