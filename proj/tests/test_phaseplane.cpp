#include "walshtf/phaseplane.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "oracles.hpp"

using namespace walshtf;

namespace {

oracles::RatRect rect(const Tile& t) {
    return {oracles::rat_interval(t.time()), oracles::rat_interval(t.freq())};
}

// All tiles inside [0, time_len) x [0, freq_len) with time scales
// -kmax <= -k <= kmax (k is the frequency scale of the tile).
std::vector<Tile> all_tiles(long time_len_log2, long freq_len_log2, long kmax) {
    std::vector<Tile> out;
    for (long k = -kmax; k <= kmax; ++k) {
        if (-k > time_len_log2) continue;   // time interval longer than window
        if (k > freq_len_log2) continue;    // frequency interval taller than window
        long npos = 1L << (time_len_log2 + k);
        long lpos = 1L << (freq_len_log2 - k);
        for (long n = 0; n < npos; ++n)
            for (long l = 0; l < lpos; ++l) out.push_back(Tile(k, n, l));
    }
    return out;
}

std::vector<Quartile> all_quartiles(long time_len_log2, long freq_len_log2,
                                    long kmax) {
    std::vector<Quartile> out;
    for (long k = -kmax; k <= kmax; ++k) {
        if (-k > time_len_log2) continue;
        if (k + 2 > freq_len_log2) continue;
        long npos = 1L << (time_len_log2 + k);
        long lpos = 1L << (freq_len_log2 - k - 2);
        for (long n = 0; n < npos; ++n)
            for (long l = 0; l < lpos; ++l) out.push_back(Quartile(k, n, l));
    }
    return out;
}

}  // namespace

TEST_CASE("sub-tile geometry") {
    // [0, 1/2) x [8, 16) splits at frequencies 8, 10, 12, 14; the middle
    // quarter of interest for slot 2 is [10, 12).
    Quartile P(1, 0, 1);
    CHECK(P.time() == DyadicInterval{-1, 0});
    CHECK(P.freq() == DyadicInterval{3, 1});
    CHECK(P.subtile(2).freq() == DyadicInterval{1, 5});
    CHECK(P.subtile(2).time() == DyadicInterval{-1, 0});

    // [0,1) x [0,4): quarters [0,1), [1,2), [2,3).
    Quartile U(0, 0, 0);
    CHECK(U.subtile(1).freq() == DyadicInterval{0, 0});
    CHECK(U.subtile(2).freq() == DyadicInterval{0, 1});
    CHECK(U.subtile(3).freq() == DyadicInterval{0, 2});

    CHECK_THROWS_AS(Quartile(0, 0, -1), NegativeFrequency);
    CHECK_THROWS_AS(Tile(0, 0, -2), NegativeFrequency);
}

TEST_CASE("tile order matches rectangle oracle and is a strict partial order") {
    auto tiles = all_tiles(2, 4, 3);  // [0,4) x [0,16), |k| <= 3
    REQUIRE(tiles.size() == 384);

    for (const auto& a : tiles) {
        auto ra = rect(a);
        for (const auto& b : tiles) {
            auto rb = rect(b);
            bool lt = tile_lt(a, b);
            CHECK(lt == oracles::rect_lt(ra, rb));
            // Distinct tiles intersect exactly when comparable.
            if (!(a == b)) {
                bool meets = tile_intersects(a, b);
                bool cmp = tile_lt(a, b) || tile_lt(b, a);
                CHECK(meets == oracles::rect_intersects(ra, rb));
                CHECK(meets == cmp);
            }
        }
    }

    // Irreflexive + antisymmetric.
    for (const auto& a : tiles) CHECK_FALSE(tile_lt(a, a));
    for (std::size_t x = 0; x < tiles.size(); ++x)
        for (std::size_t y = x + 1; y < tiles.size(); ++y)
            CHECK_FALSE((tile_lt(tiles[x], tiles[y]) && tile_lt(tiles[y], tiles[x])));

    // Transitive over comparable pairs.
    std::vector<std::pair<std::size_t, std::size_t>> lt_pairs;
    for (std::size_t x = 0; x < tiles.size(); ++x)
        for (std::size_t y = 0; y < tiles.size(); ++y)
            if (tile_lt(tiles[x], tiles[y])) lt_pairs.emplace_back(x, y);
    for (auto [x, y] : lt_pairs)
        for (auto [y2, z] : lt_pairs)
            if (y == y2) CHECK(tile_lt(tiles[x], tiles[z]));
}

TEST_CASE("lacunarity on a reduced window") {
    auto qs = all_quartiles(1, 4, 2);  // [0,2) x [0,16), |k| <= 2
    for (const auto& a : qs)
        for (const auto& b : qs)
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    if (i == j) continue;
                    if (!check_lacunarity(a, b, i, j)) {
                        CAPTURE(a.k, a.n, a.l, b.k, b.n, b.l, i, j);
                        FAIL("lacunarity violated");
                    }
                }
    // Oracle cross-check on the underlying rectangles for a sample.
    for (const auto& a : qs)
        for (const auto& b : qs) {
            if (a == b) continue;
            if (tile_le(a.subtile(1), b.subtile(1)))
                CHECK_FALSE(oracles::rect_intersects(rect(a.subtile(2)),
                                                     rect(b.subtile(2))));
        }
}

TEST_CASE("trees") {
    // Top [0,1) x [0,4); members must satisfy P_2 <= top_2 (slot-2 tile [0,1) x [1,2)).
    Quartile top(0, 0, 0);
    std::vector<Quartile> coll = {
        top,
        Quartile(1, 0, 2),   // [0,1/2) x [16,24): slot-2 tile [0,1/2) x [18,20)
        Quartile(2, 1, 0),   // [1/4,1/2) x [0,4):  slot-2 tile [1/4,1/2) x [4,8)
        Quartile(1, 1, 0),   // [1/2,1) x [0,8):    slot-2 tile [1/2,1) x [2,4)
    };
    // Which of these slot-2 tiles sit below [0,1) x [1,2)?  Only the top
    // itself: the others have frequency blocks away from [1,2).
    Tree t = maximal_tree(top, 2, coll);
    REQUIRE(t.members.size() == 1);
    CHECK(t.members[0] == top);

    // Slot 1: top_1 = [0,1) x [0,1).  Quartile(2,1,0) has slot-1 tile
    // [1/4,1/2) x [0,16) and Quartile(1,1,0) has [1/2,1) x [0,2); both
    // frequency blocks cover [0,1), so both are members.  Canonical order
    // sorts by time scale first.
    Tree t1 = maximal_tree(top, 1, coll);
    REQUIRE(t1.members.size() == 3);
    CHECK(t1.members[0] == Quartile(2, 1, 0));
    CHECK(t1.members[1] == Quartile(1, 1, 0));
    CHECK(t1.members[2] == top);

    // Validation rejects foreign members.
    CHECK_THROWS_AS(Tree(top, 2, {Quartile(1, 0, 2)}), PreconditionViolated);
    CHECK_THROWS_AS(Tree(top, 0, {}), PreconditionViolated);

    // The top does not have to be a member.
    CHECK_NOTHROW(Tree(top, 1, {Quartile(2, 1, 0)}));
}

TEST_CASE("restriction by a disjoint family") {
    QuartileGenConfig pc{.seed = 11, .window = {3, 0}, .kmin = -1, .kmax = 3,
                         .freq_max = 7, .count = 80};
    QuartileGenConfig dc{.seed = 12, .window = {3, 0}, .kmin = -1, .kmax = 3,
                         .freq_max = 7, .count = 12};
    auto coll = gen_quartiles(pc);
    auto dis = gen_disjoint_family(dc);
    REQUIRE(!coll.empty());
    REQUIRE(dis.size() >= 2);

    auto kept = biest_restrict(coll, dis);

    // Characterization: for every P whose first sub-tile meets some Q_3,
    // the frequency of Q_3 contains the frequency of P_1 iff P was kept.
    for (const auto& p : coll) {
        bool in_kept = std::find(kept.begin(), kept.end(), p) != kept.end();
        for (const auto& q : dis) {
            if (tile_disjoint(p.subtile(1), q.subtile(3))) continue;
            bool freq_nested =
                interval_subset(q.subtile(3).freq(), p.subtile(1).freq());
            CHECK(freq_nested == in_kept);
        }
    }

    // A family with intersecting third sub-tiles is rejected.
    Quartile q0(0, 0, 0);
    CHECK_THROWS_AS(biest_restrict(coll, {q0, q0}), DisjointnessViolation);
}

TEST_CASE("generation is deterministic and respects bounds") {
    QuartileGenConfig cfg{.seed = 99, .window = {2, 1}, .kmin = -2, .kmax = 4,
                          .freq_max = 9, .count = 50};
    auto a = gen_quartiles(cfg);
    auto b = gen_quartiles(cfg);
    CHECK(a == b);
    REQUIRE(!a.empty());
    for (const auto& q : a) {
        CHECK(interval_subset(q.time(), cfg.window));
        CHECK(q.k >= cfg.kmin);
        CHECK(q.k <= cfg.kmax);
        CHECK(q.l >= 0);
        CHECK(q.l <= cfg.freq_max);
    }
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(quartile_before(a[i - 1], a[i]));

    auto d = gen_disjoint_family(cfg);
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = x + 1; y < d.size(); ++y)
            CHECK(tile_disjoint(d[x].subtile(3), d[y].subtile(3)));
}
