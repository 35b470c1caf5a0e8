#pragma once

// Tile norms for coefficient sequences on quartile collections.
//
// For a finite collection of quartiles, a sequence a indexed by it and a
// slot j, the two basic norms are
//
//   size_j(a)   = sup over i-trees T (i != j) of
//                 ( |I_T|^-1 sum_{P in T} |a_P|^2 )^{1/2}
//   energy_j(a) = sup over subfamilies D with { P_j : P in D } pairwise
//                 disjoint of ( sum_{P in D} |a_P|^2 )^{1/2}
//
// Squares are computed exactly; square roots appear only in reported
// doubles.  The size sup over trees with arbitrary dyadic tops equals the
// sup over tops drawn from the collection: splitting a tree at its maximal
// members partitions it into trees topped by members, and the average over
// the original top interval is dominated by the best member average.
// Disjointness of distinct tiles is failure of comparability, so energy is
// a maximum-weight antichain problem in the tile order.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "walshtf/antichain.hpp"
#include "walshtf/errors.hpp"
#include "walshtf/exact_scalar.hpp"
#include "walshtf/operators.hpp"
#include "walshtf/phaseplane.hpp"
#include "walshtf/step_function.hpp"

namespace walshtf {

// A nonnegative quantity carried as its exact square plus a rounded root.
struct NormValue {
    ExactScalar square;
    double value = 0.0;
};

inline NormValue make_norm_value(ExactScalar sq) {
    double v = std::sqrt(sq.to_double());
    return {std::move(sq), v};
}

namespace norm_detail {

inline ExactScalar exact_value(const ExactScalar& x) { return x; }
inline ExactScalar exact_value(double x) { return ExactScalar::from_double(x); }

template <class S>
std::vector<ExactScalar> squared_coefficients(const std::vector<Quartile>& coll,
                                              const BasicCoeffSeq<S>& a) {
    std::vector<ExactScalar> sq(coll.size());
    for (std::size_t p = 0; p < coll.size(); ++p) {
        ExactScalar v = exact_value(a.at(coll[p]));
        sq[p] = v * v;
    }
    return sq;
}

}  // namespace norm_detail

// Outcome of a tree-shaped sup: the value together with the attaining
// tree.  Empty collections give the zero outcome with an empty tree.
struct TreeSupOutcome {
    NormValue norm;
    Tree tree;
};

template <class S>
TreeSupOutcome size_norm(const std::vector<Quartile>& coll,
                         const BasicCoeffSeq<S>& a, int j) {
    if (j < 1 || j > 3)
        throw PreconditionViolated("size slot must be 1, 2 or 3");
    auto sq = norm_detail::squared_coefficients(coll, a);
    TreeSupOutcome out;
    std::vector<Quartile> members;
    for (const Quartile& top : coll) {
        for (int i = 1; i <= 3; ++i) {
            if (i == j) continue;
            Tile anchor = top.subtile(i);
            ExactScalar total;
            members.clear();
            for (std::size_t p = 0; p < coll.size(); ++p) {
                if (!tile_le(coll[p].subtile(i), anchor)) continue;
                total += sq[p];
                members.push_back(coll[p]);
            }
            ExactScalar cand = total * ExactScalar::pow2(top.k);
            if (out.norm.square < cand) {
                out.norm.square = std::move(cand);
                out.tree = Tree(top, i, members);
            }
        }
    }
    out.norm = make_norm_value(std::move(out.norm.square));
    return out;
}

// Re-evaluate a tree witness from scratch; equals the reported square.
template <class S>
ExactScalar size_witness_square(const Tree& t, const BasicCoeffSeq<S>& a) {
    ExactScalar total;
    for (const Quartile& p : t.members) {
        ExactScalar v = norm_detail::exact_value(a.at(p));
        total += v * v;
    }
    return total * ExactScalar::pow2(t.top.k);
}

struct EnergyOutcome {
    NormValue norm;
    std::vector<Quartile> family;  // attaining pairwise-disjoint subfamily
    bool used_flow = false;
    long nodes = 0;
};

template <class S>
EnergyOutcome energy_norm(const std::vector<Quartile>& coll, const BasicCoeffSeq<S>& a,
                          int j, AntichainMethod method = AntichainMethod::automatic) {
    if (j < 1 || j > 3)
        throw PreconditionViolated("energy slot must be 1, 2 or 3");
    auto weights = norm_detail::squared_coefficients(coll, a);
    std::vector<Tile> tiles;
    tiles.reserve(coll.size());
    for (const Quartile& p : coll) tiles.push_back(p.subtile(j));
    auto less = [&tiles](std::size_t x, std::size_t y) {
        return tile_lt(tiles[x], tiles[y]);
    };
    AntichainResult r = max_weight_antichain(coll.size(), less, weights, method);
    EnergyOutcome out;
    out.norm = make_norm_value(std::move(r.weight));
    out.family.reserve(r.members.size());
    for (std::size_t idx : r.members) out.family.push_back(coll[idx]);
    out.used_flow = r.used_flow;
    out.nodes = r.nodes;
    return out;
}

template <class S>
ExactScalar energy_witness_square(const EnergyOutcome& w, const BasicCoeffSeq<S>& a) {
    ExactScalar total;
    for (const Quartile& p : w.family) {
        ExactScalar v = norm_detail::exact_value(a.at(p));
        total += v * v;
    }
    return total;
}

/*
 * Weak-type variant of size: the square average over the tree is replaced
 * by the L^{1,infinity} norm over I_T of
 *
 *     ( sum_{P in T} |a_P|^2 |I_P|^-1 chi_{I_P} )^{1/2},
 *
 * normalised by |I_T|^-1.  The inner function is a step function whose
 * square has exact cell values u, so the weak norm of the square root is
 * the max over cell values of (u * m^2)^{1/2} with m the measure of
 * { square >= u }; the comparison runs on the exact squares u m^2.
 */
template <class S>
TreeSupOutcome jn_weak_size(const std::vector<Quartile>& coll,
                            const BasicCoeffSeq<S>& a, int j) {
    if (j < 1 || j > 3)
        throw PreconditionViolated("weak size slot must be 1, 2 or 3");
    auto sq = norm_detail::squared_coefficients(coll, a);
    TreeSupOutcome out;
    std::vector<Quartile> members;
    for (const Quartile& top : coll) {
        for (int i = 1; i <= 3; ++i) {
            if (i == j) continue;
            Tile anchor = top.subtile(i);
            members.clear();
            long fine = top.k;
            for (std::size_t p = 0; p < coll.size(); ++p) {
                if (!tile_le(coll[p].subtile(i), anchor)) continue;
                members.push_back(coll[p]);
                fine = std::max(fine, coll[p].k);
            }
            // Accumulate |a_P|^2 / |I_P| on the cells of each member's
            // time interval.
            StepFunction g(top.time(), fine);
            long base = g.first_cell();
            for (std::size_t p = 0; p < coll.size(); ++p) {
                if (!tile_le(coll[p].subtile(i), anchor)) continue;
                ExactScalar bump = sq[p] * ExactScalar::pow2(coll[p].k);
                long lo = coll[p].n << (fine - coll[p].k);
                long cnt = 1L << (fine - coll[p].k);
                for (long c = 0; c < cnt; ++c)
                    g.values[static_cast<std::size_t>(lo + c - base)] += bump;
            }
            // Weak norm of sqrt(g) over I_T, squared.
            std::vector<ExactScalar> levels;
            for (const auto& u : g.values)
                if (!u.is_zero()) levels.push_back(u);
            std::sort(levels.begin(), levels.end());
            levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
            ExactScalar weak_sq;
            for (const ExactScalar& u : levels) {
                long cnt = 0;
                for (const auto& x : g.values)
                    if (!(x < u)) ++cnt;
                ExactScalar cand = u * ExactScalar(cnt * cnt) *
                                   ExactScalar::pow2(-2 * fine);
                if (weak_sq < cand) weak_sq = cand;
            }
            ExactScalar cand = weak_sq * ExactScalar::pow2(2 * top.k);
            if (out.norm.square < cand) {
                out.norm.square = std::move(cand);
                out.tree = Tree(top, i, members);
            }
        }
    }
    out.norm = make_norm_value(std::move(out.norm.square));
    return out;
}

// Size and energy for each slot, with witnesses.
struct NormReport {
    std::array<TreeSupOutcome, 3> size;  // index j - 1
    std::array<EnergyOutcome, 3> energy;
};

template <class S>
NormReport norm_report(const std::vector<Quartile>& coll, const BasicCoeffSeq<S>& a1,
                       const BasicCoeffSeq<S>& a2, const BasicCoeffSeq<S>& a3,
                       AntichainMethod method = AntichainMethod::automatic) {
    NormReport r;
    const BasicCoeffSeq<S>* seq[3] = {&a1, &a2, &a3};
    for (int j = 1; j <= 3; ++j) {
        r.size[static_cast<std::size_t>(j - 1)] = size_norm(coll, *seq[j - 1], j);
        r.energy[static_cast<std::size_t>(j - 1)] =
            energy_norm(coll, *seq[j - 1], j, method);
    }
    return r;
}

inline void check_theta_triple(const std::array<double, 3>& theta) {
    double sum = 0.0;
    for (double t : theta) {
        if (!(t >= 0.0 && t < 1.0))
            throw BadTheta("each theta component must lie in [0, 1)");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw BadTheta("theta components must sum to 1");
}

// prod_j size_j^theta_j * energy_j^(1-theta_j).
inline double abstract_rhs(const NormReport& r, const std::array<double, 3>& theta) {
    check_theta_triple(theta);
    double prod = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
        prod *= std::pow(r.size[j].norm.value, theta[j]) *
                std::pow(r.energy[j].norm.value, 1.0 - theta[j]);
    }
    return prod;
}

template <class S>
double abstract_rhs(const std::vector<Quartile>& coll, const BasicCoeffSeq<S>& a1,
                    const BasicCoeffSeq<S>& a2, const BasicCoeffSeq<S>& a3,
                    const std::array<double, 3>& theta) {
    return abstract_rhs(norm_report(coll, a1, a2, a3), theta);
}

// Exact sup over a collection of |E ∩ I_P| / |I_P|, with the attaining
// quartile when the collection is nonempty.
struct SupRatio {
    ExactScalar ratio;
    double value = 0.0;
    bool attained = false;
    Quartile where;
};

inline SupRatio sup_interval_ratio(const StepFunction& indicator,
                                   const std::vector<Quartile>& coll) {
    SupRatio out;
    for (const Quartile& p : coll) {
        ExactScalar r = integral_over(indicator, p.time()) * ExactScalar::pow2(p.k);
        if (!out.attained || out.ratio < r) {
            out.ratio = std::move(r);
            out.attained = true;
            out.where = p;
        }
    }
    out.value = out.ratio.to_double();
    return out;
}

/*
 * Right-hand sides of the standard bounds on size and energy when the
 * coefficient sequences come from functions bounded by indicators of sets
 * E_1..E_4:
 *
 *   l2[j]            |E_j|^{1/2}          (energy bound, Bessel)
 *   sup_ratio[j]     sup_P |E_j cap I_P| / |I_P|   (size bound)
 *   product_l2       |E_3|^{(1-theta)/2} |E_4|^{theta/2}
 *   product_mixed    (|E_4|^{1/2} sup_P r_3)^{1-theta} (|E_3|^{1/2} sup_P r_4)^theta
 *   product_sup      sup_Q r_3(Q)^{1-theta} r_4(Q)^theta
 *
 * where r_j(R) = |E_j cap I_R| / |I_R|.  The first two families are exact;
 * the three composites carry fractional powers and are doubles.  The sups
 * in product_mixed run over the outer collection, the sup in product_sup
 * over the inner collection.
 */
struct LemmaRhs {
    std::vector<NormValue> l2;        // per set, square = |E_j| exactly
    std::vector<SupRatio> sup_ratio;  // per set, over the outer collection
    double product_l2 = 0.0;
    double product_mixed = 0.0;
    double product_sup = 0.0;
    bool attained_sup = false;
    Quartile product_sup_where;
};

inline LemmaRhs lemma_rhs_bounds(const std::vector<StepFunction>& e_sets,
                                 const std::vector<Quartile>& outer,
                                 const std::vector<Quartile>& inner, double theta) {
    for (const auto& e : e_sets)
        for (const auto& v : e.values)
            if (!(v.is_zero() || v == ExactScalar(1)))
                throw PreconditionViolated("set indicators must take values 0 and 1");
    LemmaRhs out;
    for (const auto& e : e_sets) {
        out.l2.push_back(make_norm_value(l1_norm(e)));
        out.sup_ratio.push_back(sup_interval_ratio(e, outer));
    }
    if (e_sets.size() < 4) return out;
    if (!(theta > 0.0 && theta < 1.0))
        throw BadTheta("theta must lie strictly between 0 and 1");
    double m3 = out.l2[2].square.to_double();
    double m4 = out.l2[3].square.to_double();
    double r3 = out.sup_ratio[2].value;
    double r4 = out.sup_ratio[3].value;
    out.product_l2 = std::pow(m3, (1.0 - theta) / 2) * std::pow(m4, theta / 2);
    out.product_mixed = std::pow(std::sqrt(m4) * r3, 1.0 - theta) *
                        std::pow(std::sqrt(m3) * r4, theta);
    for (const Quartile& q : inner) {
        double q3 = (integral_over(e_sets[2], q.time()) * ExactScalar::pow2(q.k)).to_double();
        double q4 = (integral_over(e_sets[3], q.time()) * ExactScalar::pow2(q.k)).to_double();
        double cand = std::pow(q3, 1.0 - theta) * std::pow(q4, theta);
        if (!out.attained_sup || cand > out.product_sup) {
            out.product_sup = cand;
            out.attained_sup = true;
            out.product_sup_where = q;
        }
    }
    return out;
}

inline LemmaRhs lemma_rhs_bounds(const std::vector<StepFunction>& e_sets,
                                 const std::vector<Quartile>& coll, double theta) {
    return lemma_rhs_bounds(e_sets, coll, coll, theta);
}

}  // namespace walshtf
