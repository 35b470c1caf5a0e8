// End-to-end verification gate.  Ten independent checks cover the Walsh
// sign identities, orthonormality of tiling packets, lacunarity of tile
// orders, restriction of collections along disjoint families, single-tree
// estimates, forest decompositions, the norm-chain scaling, the model
// inequalities behind the composed transforms, restricted-type scaling
// slopes, and the exponent polytopes.  Each check prints one pass/fail
// line with its key counts; the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "walshtf/decomp.hpp"
#include "walshtf/exponents.hpp"
#include "walshtf/harness.hpp"
#include "walshtf/norms.hpp"
#include "walshtf/operators.hpp"
#include "walshtf/phaseplane.hpp"
#include "walshtf/rng.hpp"
#include "walshtf/walsh.hpp"

using namespace walshtf;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string text(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return std::string(buf);
}

// ---------------------------------------------------------------- check 1

// Independent construction: w_0 = [+], w_{2l} = [w | w], w_{2l+1} = [w | -w].
std::vector<int> walsh_by_doubling(long l) {
    if (l == 0) return {1};
    std::vector<int> half = walsh_by_doubling(l / 2);
    std::vector<int> out;
    out.reserve(2 * half.size());
    for (int s : half) out.push_back(s);
    for (int s : half) out.push_back(l % 2 == 0 ? s : -s);
    return out;
}

Outcome check_walsh_identities() {
    long bad_rec = 0;
    for (long l = 0; l < 256; ++l) {
        std::vector<int> pat = walsh_by_doubling(l);
        std::size_t rep = 256 / pat.size();
        for (long m = 0; m < 256; ++m)
            if (walsh_sign(l, 8, m) != pat[static_cast<std::size_t>(m) / rep])
                ++bad_rec;
    }
    long bad_prod = 0;
    for (long a = 0; a < 64; ++a)
        for (long b = 0; b < 64; ++b)
            for (long m = 0; m < 64; ++m)
                if (walsh_sign(a, 6, m) * walsh_sign(b, 6, m) !=
                    walsh_sign(a ^ b, 6, m))
                    ++bad_prod;
    Outcome out;
    out.pass = bad_rec == 0 && bad_prod == 0;
    out.detail = text(
        "closed form vs doubling recursion (l < 256): %ld mismatches; "
        "pointwise products map to xor indices (a, b < 64): %ld mismatches",
        bad_rec, bad_prod);
    return out;
}

// ---------------------------------------------------------------- check 2

// Random dyadic tiling of [0,1) x [0, 2^hlog) into area-one tiles: a region
// of area 2^a splits in time or in frequency until area one.
void split_area(Rng& rng, long k, long n, long l, long hlog,
                std::vector<Tile>& out) {
    if (hlog == 0) {
        out.push_back(Tile(k, n, l));
        return;
    }
    if (rng.coin()) {
        split_area(rng, k + 1, 2 * n, l, hlog - 1, out);
        split_area(rng, k + 1, 2 * n + 1, l, hlog - 1, out);
    } else {
        split_area(rng, k, n, 2 * l, hlog - 1, out);
        split_area(rng, k, n, 2 * l + 1, hlog - 1, out);
    }
}

Outcome check_orthonormal_tilings() {
    Rng rng(20260823);
    long bad_gram = 0, bad_plancherel = 0;
    int tilings = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Tile> tiles;
        split_area(rng, 0, 0, 0, 6, tiles);
        if (tiles.size() != 64) continue;
        ++tilings;
        long res = 0;
        for (const auto& t : tiles) res = std::max(res, packet_resolution(t));
        std::vector<StepFunction> packets;
        packets.reserve(tiles.size());
        for (const auto& t : tiles) packets.push_back(wave_packet(t, res));
        for (std::size_t i = 0; i < packets.size(); ++i)
            for (std::size_t j = i; j < packets.size(); ++j) {
                ExactScalar ip = inner_product(packets[i], packets[j]);
                if (ip != (i == j ? ExactScalar(1) : ExactScalar())) ++bad_gram;
            }
        for (int rep = 0; rep < 20; ++rep) {
            StepFunction f({0, 0}, res);
            for (auto& v : f.values) v = ExactScalar(rng.range(-4, 4));
            ExactScalar sum;
            for (const auto& t : tiles) {
                ExactScalar c = packet_inner_product(f, t);
                sum += c * c;
            }
            if (sum != l2_norm_squared(f)) ++bad_plancherel;
        }
    }
    Outcome out;
    out.pass = tilings == 100 && bad_gram == 0 && bad_plancherel == 0;
    out.detail = text(
        "%d random tilings of [0,1) x [0,64): %ld Gram entries off the "
        "identity, %ld Plancherel failures over %d random functions",
        tilings, bad_gram, bad_plancherel, tilings * 20);
    return out;
}

// ---------------------------------------------------------------- check 3

Outcome check_lacunarity_exhaustive() {
    // Every quartile with time scale in -2..3 inside [0,4) and frequency
    // interval inside [0,64); that box holds two periods of the coarsest
    // frequency step, so relative positions repeat beyond it.
    std::vector<Quartile> all;
    for (long k = -2; k <= 3; ++k)
        for (long n = 0; n < (1L << (k + 2)); ++n)
            for (long l = 0; l < (1L << (4 - k)); ++l)
                all.push_back(Quartile(k, n, l));
    std::vector<std::array<Tile, 3>> sub;
    sub.reserve(all.size());
    for (const auto& q : all)
        sub.push_back({q.subtile(1), q.subtile(2), q.subtile(3)});
    long direct_bad = 0, library_bad = 0, pairs = 0;
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = 0; b < all.size(); ++b) {
            if (a == b) continue;
            ++pairs;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    if (tile_le(sub[a][i], sub[b][i]) &&
                        !tile_disjoint(sub[a][j], sub[b][j]))
                        ++direct_bad;
                    if (!check_lacunarity(all[a], all[b], i + 1, j + 1))
                        ++library_bad;
                }
        }
    Outcome out;
    out.pass = direct_bad == 0 && library_bad == 0 && all.size() == 384;
    out.detail = text(
        "%zu quartiles (scales -2..3 in [0,4), frequencies below 64), %ld "
        "ordered pairs x 6 slot pairs: %ld order-vs-overlap counterexamples, "
        "%ld library disagreements",
        all.size(), pairs, direct_bad, library_bad);
    return out;
}

// ---------------------------------------------------------------- check 4

Outcome check_biest_restriction() {
    long bad = 0, pairs = 0, kept_total = 0, family_total = 0;
    int instances = 0;
    for (int t = 0; t < 1000; ++t) {
        QuartileGenConfig pc;
        pc.seed = 41000 + static_cast<std::uint64_t>(t);
        pc.window = {2, 0};
        pc.kmin = -2;
        pc.kmax = 2;
        pc.freq_max = 7;
        pc.count = 48;
        std::vector<Quartile> coll = gen_quartiles(pc);
        QuartileGenConfig dc = pc;
        dc.seed = 91000 + static_cast<std::uint64_t>(t);
        dc.count = 6;
        std::vector<Quartile> dis = gen_disjoint_family(dc);
        if (coll.empty() || dis.empty()) continue;
        ++instances;
        family_total += static_cast<long>(dis.size());
        std::vector<Quartile> kept = biest_restrict(coll, dis);
        kept_total += static_cast<long>(kept.size());
        std::set<Quartile, QuartileLess> members(kept.begin(), kept.end());
        for (const auto& p : coll)
            for (const auto& q : dis) {
                Tile p1 = p.subtile(1), q3 = q.subtile(3);
                if (tile_disjoint(p1, q3)) continue;
                ++pairs;
                bool contained = interval_subset(q3.freq(), p1.freq());
                bool member = members.count(p) > 0;
                if (contained != member) ++bad;
            }
    }
    Outcome out;
    out.pass = instances == 1000 && bad == 0;
    out.detail = text(
        "%d instances, %ld intersecting (quartile, family) pairs: frequency "
        "containment vs restricted membership disagreed %ld times "
        "(avg family %.1f, avg kept %.1f)",
        instances, pairs, bad, double(family_total) / instances,
        double(kept_total) / instances);
    return out;
}

// ---------------------------------------------------------------- check 5

Outcome check_single_tree_estimates() {
    Rng rng(55001);
    long bad = 0;
    int built = 0;
    int kinds[4] = {0, 0, 0, 0};
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        QuartileGenConfig pc;
        pc.seed = 52000 + static_cast<std::uint64_t>(t);
        pc.window = {2, 0};
        pc.kmin = -2;
        pc.kmax = 3;
        pc.freq_max = 15;
        pc.count = 80;
        std::vector<Quartile> coll = gen_quartiles(pc);
        if (coll.empty()) continue;
        const Quartile top = coll[rng.below(coll.size())];
        int kind = 1 + static_cast<int>(rng.below(3));
        Tree full = maximal_tree(top, kind, coll);
        std::vector<Quartile> members = full.members;
        rng.shuffle(members);
        if (members.size() > 40) members.resize(40);
        if (members.empty()) continue;
        Tree tr(top, kind, members);
        std::array<CoeffSeq, 3> a;
        for (int s = 0; s < 3; ++s) {
            a[s].slot = s + 1;
            for (const auto& q : tr.members)
                a[s].entries[q] = ExactScalar(rng.range(-3, 3));
        }
        TreeEstimate est = tree_estimate(tr, a[0], a[1], a[2]);
        ExactScalar lhs_sq = est.lhs_abs * est.lhs_abs;
        if (est.rhs_square < lhs_sq) ++bad;
        if (est.rhs > 0.0) worst = std::max(worst, est.lhs / est.rhs);
        ++kinds[kind];
        ++built;
    }
    Outcome out;
    out.pass = built == 500 && bad == 0;
    out.detail = text(
        "%d random trees (kinds %d/%d/%d, <= 40 members): %ld violations of "
        "the exact single-tree bound; worst lhs/rhs ratio %.4f",
        built, kinds[1], kinds[2], kinds[3], bad, worst);
    return out;
}

// ---------------------------------------------------------------- check 6

// Full audit of one decomposition: the forests partition the input, each
// level's residual obeys the halved size bound when re-measured from
// scratch, primed trees keep their driving-pass tiles pairwise disjoint
// within each parity-and-kind class, and the tree-top lengths obey the
// counting bound with constant 64.
bool audit_partition(const std::vector<Quartile>& coll,
                     const std::array<CoeffSeq, 3>& a,
                     const PartitionResult& part, std::string& why) {
    std::set<Quartile, QuartileLess> work(coll.begin(), coll.end());
    for (const auto& q : part.stripped)
        if (work.erase(q) == 0) {
            why = "stripped quartile missing from input";
            return false;
        }
    long prev_n = part.n_start - 1;
    for (const auto& level : part.levels) {
        if (level.n < part.n_start || level.n <= prev_n) {
            why = "level indices not increasing from the start level";
            return false;
        }
        prev_n = level.n;

        // Tree members reassemble the level part without duplication.
        std::vector<Quartile> from_trees;
        for (const auto& t : level.trees)
            from_trees.insert(from_trees.end(), t.tree.members.begin(),
                              t.tree.members.end());
        std::vector<Quartile> part_sorted = level.part;
        QuartileLess less;
        std::sort(from_trees.begin(), from_trees.end(), less);
        std::sort(part_sorted.begin(), part_sorted.end(), less);
        for (std::size_t i = 1; i < from_trees.size(); ++i)
            if (!less(from_trees[i - 1], from_trees[i])) {
                why = "duplicate quartile across trees in one level";
                return false;
            }
        if (from_trees != part_sorted) {
            why = "tree members do not reassemble the level part";
            return false;
        }

        // Primed/companion structure: pairs share step and top, the primed
        // tree drives a kind distinct from the pass and contains its top.
        if (level.trees.size() % 2 != 0) {
            why = "odd number of tagged trees";
            return false;
        }
        for (std::size_t x = 0; x + 1 < level.trees.size(); x += 2) {
            const TaggedTree& p = level.trees[x];
            const TaggedTree& c = level.trees[x + 1];
            bool paired = p.primed && !c.primed && p.step == c.step &&
                          p.pass == c.pass && p.tree.top == c.tree.top &&
                          p.tree.kind != p.pass && c.tree.kind == c.pass;
            bool top_in = std::find(p.tree.members.begin(), p.tree.members.end(),
                                    p.tree.top) != p.tree.members.end();
            if (!paired || !top_in) {
                why = "primed/companion pairing broken";
                return false;
            }
        }

        for (int pass = 1; pass <= 3; ++pass) {
            // Counting bound on top lengths, constant 64.
            ExactScalar top_sum;
            for (const auto& t : level.trees)
                if (t.pass == pass) top_sum += t.tree.top_length();
            ExactScalar cap = ExactScalar(64) * ExactScalar::pow2(2 * level.n);
            if (cap < top_sum) {
                why = "tree-top length sum exceeds 64 * 2^(2n)";
                return false;
            }

            // Within each parity-and-kind class the selected trees must keep
            // their pass-slot tiles pairwise disjoint, members and tops alike.
            std::map<std::pair<long, int>, std::vector<const Tree*>> classes;
            for (const auto& t : level.trees)
                if (t.pass == pass && t.primed)
                    classes[{((t.tree.top.k % 2) + 2) % 2, t.tree.kind}]
                        .push_back(&t.tree);
            for (const auto& [key, trees] : classes) {
                std::vector<Tile> tiles, tops;
                for (const Tree* tp : trees) {
                    tops.push_back(tp->top.subtile(pass));
                    for (const auto& q : tp->members)
                        tiles.push_back(q.subtile(pass));
                }
                for (std::size_t x = 0; x < tops.size(); ++x)
                    for (std::size_t y = x + 1; y < tops.size(); ++y)
                        if (!tile_disjoint(tops[x], tops[y])) {
                            why = "tree-top tiles overlap within a class";
                            return false;
                        }
                for (std::size_t x = 0; x < tiles.size(); ++x)
                    for (std::size_t y = x + 1; y < tiles.size(); ++y)
                        if (!tile_disjoint(tiles[x], tiles[y])) {
                            why = "selected tiles overlap within a class";
                            return false;
                        }
            }
        }

        // Remove the level and re-measure the residual from scratch.
        for (const auto& q : level.part)
            if (work.erase(q) == 0) {
                why = "level part not contained in the remaining input";
                return false;
            }
        std::vector<Quartile> residual(work.begin(), work.end());
        if (!residual.empty())
            for (int j = 1; j <= 3; ++j) {
                NormValue s =
                    size_norm(residual, a[static_cast<std::size_t>(j - 1)], j)
                        .norm;
                ExactScalar bound = ExactScalar::pow2(-2 * (level.n + 1)) *
                                    part.energy_sq[static_cast<std::size_t>(j - 1)];
                if (bound < s.square) {
                    why = text("residual size breaks the halved bound in slot %d", j);
                    return false;
                }
            }
    }
    if (!work.empty()) {
        why = "quartiles left over after the last level";
        return false;
    }
    return true;
}

Outcome check_forest_decomposition() {
    Rng rng(66001);
    int instances = 0, failed = 0;
    long total_quartiles = 0, total_levels = 0;
    std::string first_why;
    for (int t = 0; t < 200; ++t) {
        QuartileGenConfig pc;
        pc.seed = 62000 + static_cast<std::uint64_t>(t);
        pc.window = {2, 0};
        pc.kmin = -2;
        pc.kmax = 3;
        pc.freq_max = 15;
        pc.count = 40 + rng.below(461);  // up to 500 quartiles
        std::vector<Quartile> coll = gen_quartiles(pc);
        std::array<CoeffSeq, 3> a;
        for (int s = 0; s < 3; ++s) {
            a[s].slot = s + 1;
            for (const auto& q : coll)
                a[s].entries[q] = ExactScalar(rng.range(-3, 3));
        }
        PartitionResult part =
            full_partition(coll, a[0], a[1], a[2], AntichainMethod::min_flow);
        ++instances;
        total_quartiles += static_cast<long>(coll.size());
        total_levels += static_cast<long>(part.levels.size());
        std::string why;
        if (!audit_partition(coll, a, part, why)) {
            ++failed;
            if (first_why.empty()) first_why = why;
        }
    }
    Outcome out;
    out.pass = instances == 200 && failed == 0;
    out.detail = text(
        "%d decompositions (avg %.0f quartiles, avg %.1f levels): %d audits "
        "failed%s%s",
        instances, double(total_quartiles) / instances,
        double(total_levels) / instances, failed,
        first_why.empty() ? "" : "; first: ", first_why.c_str());
    return out;
}

// ---------------------------------------------------------------- check 7

Outcome check_norm_chain_scaling() {
    const std::array<std::size_t, 4> sizes{50, 100, 200, 400};
    std::array<double, 4> max_ratio{};
    const std::array<double, 3> theta{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    Rng vrng(77002);
    long infinite = 0;
    int done = 0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        for (int t = 0; t < 1000; ++t) {
            QuartileGenConfig pc;
            pc.seed = 700000 + 1000 * static_cast<std::uint64_t>(si) +
                      static_cast<std::uint64_t>(t);
            pc.window = {2, 0};
            pc.kmin = -2;
            pc.kmax = 3;
            pc.freq_max = 15;
            pc.count = sizes[si];
            std::vector<Quartile> coll = gen_quartiles(pc);
            std::array<CoeffSeq, 3> a;
            for (int s = 0; s < 3; ++s) {
                a[s].slot = s + 1;
                for (const auto& q : coll)
                    a[s].entries[q] = ExactScalar(vrng.range(-3, 3));
            }
            ExactScalar acc;
            for (const auto& q : coll)
                acc += ExactScalar::half_power(q.k) * a[0].at(q) * a[1].at(q) *
                       a[2].at(q);
            double lhs = acc.abs().to_double();
            NormReport rep =
                norm_report(coll, a[0], a[1], a[2], AntichainMethod::min_flow);
            double rhs = abstract_rhs(rep, theta);
            if (lhs > 0.0) {
                if (!(rhs > 0.0)) {
                    ++infinite;
                    continue;
                }
                max_ratio[si] = std::max(max_ratio[si], lhs / rhs);
            }
            ++done;
        }
    }
    bool stable = max_ratio[3] <= 2.0 * max_ratio[0] &&
                  max_ratio[0] <= 2.0 * max_ratio[3];
    Outcome out;
    out.pass = done == 4000 && infinite == 0 && stable;
    out.detail = text(
        "trilinear sum vs size/energy bound at theta = (1/3,1/3,1/3): max "
        "ratios %.4f / %.4f / %.4f / %.4f for 50/100/200/400 quartiles, %ld "
        "unbounded ratios",
        max_ratio[0], max_ratio[1], max_ratio[2], max_ratio[3], infinite);
    return out;
}

// ---------------------------------------------------------------- check 8

Outcome check_model_inequalities() {
    // cmax[w][i]: empirical constants at window [0,8) (w=0) and [0,64)
    // (w=1) for: 0 packet energy vs L2 (must be <= 1 exactly), 1 size vs
    // occupancy ratio, 2 composed energy vs measure product, 3 composed
    // energy vs mixed sup form, 4 composed size vs local occupancy sup.
    std::array<std::array<double, 5>, 2> cmax{};
    long exact_bad = 0, infinite = 0;
    int instances = 0;
    for (int w = 0; w < 2; ++w) {
        DyadicInterval window{w == 0 ? 3 : 6, 0};
        Rng rng(88000 + static_cast<std::uint64_t>(w));
        const long res = 3;
        for (int t = 0; t < 300; ++t) {
            QuartileGenConfig oc;
            oc.seed = 810000 + 1000 * static_cast<std::uint64_t>(w) +
                      static_cast<std::uint64_t>(t);
            oc.window = window;
            oc.kmin = -1;
            oc.kmax = 2;
            oc.freq_max = 7;
            oc.count = 48;
            std::vector<Quartile> outer = gen_quartiles(oc);
            QuartileGenConfig ic = oc;
            ic.seed = 820000 + 1000 * static_cast<std::uint64_t>(w) +
                      static_cast<std::uint64_t>(t);
            std::vector<Quartile> inner = gen_quartiles(ic);
            if (outer.empty() || inner.empty()) continue;
            ++instances;

            std::vector<MeasSet> es;
            for (int s = 0; s < 4; ++s)
                es.push_back(random_cells(
                    window, res, mpq_class(1 + static_cast<long>(rng.below(7)), 8),
                    rng));

            // Packet energies never exceed the L2 norm, with constant 1.
            StepFunction f(window, res);
            for (auto& v : f.values) v = ExactScalar(rng.range(-3, 3));
            ExactScalar l2 = l2_norm_squared(f);
            for (int j = 1; j <= 3; ++j) {
                CoeffSeq aj = coefficients(outer, f, j);
                EnergyOutcome e = energy_norm(outer, aj, j);
                if (l2 < e.norm.square) ++exact_bad;
                double denom = std::sqrt(l2.to_double());
                if (denom > 0.0)
                    cmax[w][0] = std::max(cmax[w][0], e.norm.value / denom);
            }

            // Size against the occupancy ratio for set-bounded functions.
            for (int j = 1; j <= 3; ++j) {
                const MeasSet& e = es[static_cast<std::size_t>(j - 1)];
                StepFunction g(window, res);
                for (std::size_t c = 0; c < g.values.size(); ++c)
                    if (e.cells[c]) g.values[c] = ExactScalar(rng.coin() ? 1 : -1);
                CoeffSeq aj = coefficients(outer, g, j);
                double lhs = size_norm(outer, aj, j).norm.value;
                if (lhs <= 0.0) continue;
                double rhs = sup_interval_ratio(e.indicator(), outer).value;
                if (!(rhs > 0.0))
                    ++infinite;
                else
                    cmax[w][1] = std::max(cmax[w][1], lhs / rhs);
            }

            // Composed coefficients from two set-bounded inputs.
            StepFunction f3(window, res), f4(window, res);
            for (std::size_t c = 0; c < f3.values.size(); ++c) {
                if (es[2].cells[c]) f3.values[c] = ExactScalar(rng.coin() ? 1 : -1);
                if (es[3].cells[c]) f4.values[c] = ExactScalar(rng.coin() ? 1 : -1);
            }
            CoeffSeq a3 = a3_sequence(outer, inner, f3, f4);
            double lhs_energy = energy_norm(inner, a3, 3).norm.value;
            double lhs_size = size_norm(inner, a3, 3).norm.value;
            std::vector<StepFunction> inds;
            for (const auto& e : es) inds.push_back(e.indicator());
            LemmaRhs r = lemma_rhs_bounds(inds, outer, inner, 0.5);
            const double lhs_v[3] = {lhs_energy, lhs_energy, lhs_size};
            const double rhs_v[3] = {r.product_l2, r.product_mixed, r.product_sup};
            for (int li = 0; li < 3; ++li) {
                if (lhs_v[li] <= 0.0) continue;
                if (!(rhs_v[li] > 0.0))
                    ++infinite;
                else
                    cmax[w][static_cast<std::size_t>(2 + li)] = std::max(
                        cmax[w][static_cast<std::size_t>(2 + li)],
                        lhs_v[li] / rhs_v[li]);
            }
        }
    }
    bool stable = true;
    for (std::size_t li = 1; li < 5; ++li) {
        double c0 = cmax[0][li], c1 = cmax[1][li];
        if (!(c0 > 0.0) || !(c1 > 0.0) || c1 > 2.0 * c0 || c0 > 2.0 * c1)
            stable = false;
    }
    Outcome out;
    out.pass = instances == 600 && exact_bad == 0 && infinite == 0 && stable &&
               cmax[0][0] <= 1.0 && cmax[1][0] <= 1.0;
    out.detail = text(
        "five bounds x 300 instances x windows 8/64: energy<=L2 exact "
        "violations %ld; constants %.2f|%.2f, %.2f|%.2f, %.2f|%.2f, %.2f|%.2f "
        "(size, L2-product, mixed, local-sup), %ld unbounded",
        exact_bad, cmax[0][1], cmax[1][1], cmax[0][2], cmax[1][2], cmax[0][3],
        cmax[1][3], cmax[0][4], cmax[1][4], infinite);
    return out;
}

// ---------------------------------------------------------------- check 9

Outcome check_restricted_type_slopes() {
    ExperimentConfig c1;
    c1.trials_per_scale = 50;
    ExperimentReport r1 = restricted_type_experiment(c1);

    ExperimentConfig c2;
    c2.regime = Regime::a9_a12;
    c2.alpha = {frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2)};
    c2.trials_per_scale = 50;
    ExperimentReport r2 = restricted_type_experiment(c2);

    bool counts_ok = r1.trials.size() == 450 && r2.trials.size() == 450;
    bool finite = std::isfinite(r1.max_ratio) && std::isfinite(r2.max_ratio);
    Outcome out;
    out.pass = counts_ok && finite && std::fabs(r1.slope) <= 0.1 &&
               std::fabs(r2.slope) <= 0.1;
    out.detail = text(
        "50 trials per measure scale 2^0..2^8: log-log slopes %+.4f "
        "(trilinear) and %+.4f (quadrilinear at (1/2,1/2,1/2,-1/2)), "
        "tolerance 0.1",
        r1.slope, r2.slope);
    return out;
}

// --------------------------------------------------------------- check 10

Outcome check_exponent_polytopes() {
    std::array<mpq_class, 4> center{frac(1, 2), frac(1, 2), frac(1, 2),
                                    frac(-1, 2)};
    bool center_ok =
        classify_by_facets(center, PolytopeId::d) == Region::interior &&
        classify_by_combination(center, PolytopeId::d) == Region::interior;

    int vertex_bad = 0;
    for (const auto& v : vertices_D_prime().vertices) {
        if (classify_by_facets(v, PolytopeId::d_prime) != Region::boundary)
            ++vertex_bad;
        if (classify_by_combination(v, PolytopeId::d_prime) != Region::boundary)
            ++vertex_bad;
    }

    Rng rng(1001);
    long disagreements = 0;
    long counts[3] = {0, 0, 0};
    for (int t = 0; t < 10000; ++t) {
        std::array<mpq_class, 4> p;
        long den = 1L << rng.below(4);
        mpq_class sum = 0;
        for (int i = 0; i < 3; ++i) {
            p[static_cast<std::size_t>(i)] =
                mpq_class(rng.range(-2 * den, 2 * den), den);
            p[static_cast<std::size_t>(i)].canonicalize();
            sum += p[static_cast<std::size_t>(i)];
        }
        p[3] = 1 - sum;
        Region facets = classify_by_facets(p, PolytopeId::d);
        Region comb = classify_by_combination(p, PolytopeId::d);
        Region prime = classify_by_combination(p, PolytopeId::d_prime);
        Region dbl = classify_by_combination(p, PolytopeId::d_doubleprime);
        bool routes = classify_by_facets(p, PolytopeId::d_prime) == prime &&
                      classify_by_facets(p, PolytopeId::d_doubleprime) == dbl;
        Region conj;
        if (prime == Region::outside || dbl == Region::outside)
            conj = Region::outside;
        else if (prime == Region::interior && dbl == Region::interior)
            conj = Region::interior;
        else
            conj = Region::boundary;
        if (!routes || facets != conj || comb != conj)
            ++disagreements;
        else
            ++counts[static_cast<int>(facets)];
    }
    Outcome out;
    out.pass = center_ok && vertex_bad == 0 && disagreements == 0;
    out.detail = text(
        "(1/2,1/2,1/2,-1/2) interior by both routes: %s; hull vertices on the "
        "boundary: %d misclassified of 12; 10000 rational points: %ld "
        "disagreements (%ld interior / %ld boundary / %ld outside)",
        center_ok ? "yes" : "no", vertex_bad, disagreements, counts[0],
        counts[1], counts[2]);
    return out;
}

struct Criterion {
    const char* name;
    Outcome (*run)();
    double budget;  // seconds; 0 means no pinned budget
};

}  // namespace

int main() {
    const Criterion table[] = {
        {"walsh identities", check_walsh_identities, 5.0},
        {"orthonormal tilings", check_orthonormal_tilings, 60.0},
        {"lacunarity", check_lacunarity_exhaustive, 30.0},
        {"restriction", check_biest_restriction, 0.0},
        {"single-tree estimate", check_single_tree_estimates, 0.0},
        {"forest decomposition", check_forest_decomposition, 120.0},
        {"norm-chain scaling", check_norm_chain_scaling, 0.0},
        {"model inequalities", check_model_inequalities, 0.0},
        {"restricted-type slopes", check_restricted_type_slopes, 600.0},
        {"exponent polytopes", check_exponent_polytopes, 0.0},
    };
    bool all = true;
    int index = 0;
    for (const Criterion& c : table) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = text("exception: %s", e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        bool in_budget = c.budget <= 0.0 || seconds <= c.budget;
        bool pass = o.pass && in_budget;
        std::printf("criterion %2d: %s  %s — %s [%.1f s%s]\n", index,
                    pass ? "pass" : "FAIL", c.name, o.detail.c_str(), seconds,
                    in_budget ? "" : ", over budget");
        std::fflush(stdout);
        all = all && pass;
    }
    std::printf(all ? "all criteria pass\n" : "criteria FAILED\n");
    return all ? 0 : 1;
}
