#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "walshtf/dyadic_interval.hpp"
#include "walshtf/errors.hpp"
#include "walshtf/exact_scalar.hpp"
#include "walshtf/exponents.hpp"
#include "walshtf/operators.hpp"
#include "walshtf/phaseplane.hpp"
#include "walshtf/rng.hpp"
#include "walshtf/step_function.hpp"
#include "walshtf/walsh.hpp"

namespace walshtf {

/*
 * Randomized verification of the restricted-type estimates.  Measurable
 * sets are unions of grid cells; the exceptional set is carved out by the
 * dyadic maximal function; witnesses for sup |Lambda| over the unit balls
 * X(E) = { f : |f| <= 1, supp f inside E } are found by sign-pattern
 * coordinate ascent (the form is affine in each cell value, so extreme
 * points have cell values in {-1, 0, +1}).
 */

// A finite union of dyadic cells of length 2^-resolution inside a window.
struct MeasSet {
    DyadicInterval window{0, 0};
    long resolution = 0;
    std::vector<bool> cells;

    MeasSet() : cells(1, false) {}

    MeasSet(DyadicInterval w, long res) : window(w), resolution(res) {
        if (w.scale + res < 0)
            throw ResolutionTooCoarse("window shorter than one cell");
        cells.assign(static_cast<std::size_t>(1) << (w.scale + res), false);
    }

    long cell_count() const { return static_cast<long>(cells.size()); }

    long first_cell() const {
        return window.index * (1L << (window.scale + resolution));
    }

    DyadicInterval cell_interval(long local) const {
        return {-resolution, first_cell() + local};
    }

    long active_cells() const {
        long n = 0;
        for (bool b : cells) n += b ? 1 : 0;
        return n;
    }

    bool empty() const { return active_cells() == 0; }

    ExactScalar measure() const {
        return ExactScalar(active_cells()) * ExactScalar::pow2(-resolution);
    }

    StepFunction indicator() const {
        StepFunction f(window, resolution);
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c]) f.values[c] = ExactScalar(1);
        return f;
    }

    friend bool operator==(const MeasSet&, const MeasSet&) = default;
};

inline void require_same_grid(const MeasSet& a, const MeasSet& b) {
    if (a.window != b.window || a.resolution != b.resolution)
        throw PreconditionViolated("sets live on different grids");
}

inline MeasSet set_difference(const MeasSet& a, const MeasSet& b) {
    require_same_grid(a, b);
    MeasSet out = a;
    for (std::size_t c = 0; c < out.cells.size(); ++c)
        if (b.cells[c]) out.cells[c] = false;
    return out;
}

inline MeasSet set_union(const MeasSet& a, const MeasSet& b) {
    require_same_grid(a, b);
    MeasSet out = a;
    for (std::size_t c = 0; c < out.cells.size(); ++c)
        if (b.cells[c]) out.cells[c] = true;
    return out;
}

inline MeasSet set_intersection(const MeasSet& a, const MeasSet& b) {
    require_same_grid(a, b);
    MeasSet out = a;
    for (std::size_t c = 0; c < out.cells.size(); ++c)
        if (!b.cells[c]) out.cells[c] = false;
    return out;
}

// Each cell joins independently with probability num/den.
inline MeasSet random_cells(DyadicInterval window, long res,
                            const mpq_class& probability, Rng& rng) {
    if (probability < 0 || probability > 1)
        throw PreconditionViolated("cell probability outside [0, 1]");
    MeasSet out(window, res);
    mpq_class p = probability;
    p.canonicalize();
    unsigned long num = p.get_num().get_ui();
    unsigned long den = p.get_den().get_ui();
    for (std::size_t c = 0; c < out.cells.size(); ++c)
        out.cells[c] = rng.below(den) < num;
    return out;
}

// Uniformly random subset with an exact number of cells.
inline MeasSet random_with_cell_count(DyadicInterval window, long res,
                                      long count, Rng& rng) {
    MeasSet out(window, res);
    if (count < 0 || count > out.cell_count())
        throw PreconditionViolated("cell count does not fit the window");
    std::vector<long> idx(out.cells.size());
    for (std::size_t c = 0; c < idx.size(); ++c) idx[c] = static_cast<long>(c);
    rng.shuffle(idx);
    for (long i = 0; i < count; ++i)
        out.cells[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] =
            true;
    return out;
}

// Whether the dyadic interval is entirely covered by the set.
inline bool covers_interval(const MeasSet& s, const DyadicInterval& iv) {
    if (!interval_subset(iv, s.window)) return false;
    return integral_over(s.indicator(), iv) == ExactScalar::pow2(iv.scale);
}

/*
 * Exceptional set: the union over j of the super-level sets
 *
 *     { M chi_{E_j} > C |E_j| / |E_i| },
 *
 * where M is the dyadic maximal function and i is the denominator index.
 * The comparison is exact via cross-multiplication.  With the weak (1,1)
 * bound of M at constant one, each term has measure at most |E_i| / C, so
 * C = 16 keeps the union below |E_i| / 4 for up to four sets.
 */
inline MeasSet exceptional_set(const std::vector<MeasSet>& sets,
                               int denominator_index, const mpq_class& c) {
    if (sets.empty()) throw PreconditionViolated("no sets given");
    if (denominator_index < 1 ||
        denominator_index > static_cast<int>(sets.size()))
        throw PreconditionViolated("denominator index out of range");
    if (c <= 0) throw PreconditionViolated("threshold constant must be positive");
    for (const auto& s : sets) require_same_grid(sets.front(), s);
    ExactScalar denom = sets[static_cast<std::size_t>(denominator_index - 1)]
                            .measure();
    if (denom.is_zero()) throw ZeroMeasure("denominator set has measure zero");

    mpq_class cc = c;
    cc.canonicalize();
    ExactScalar num_c(mpz_class(cc.get_num()), 0, 0);
    ExactScalar den_c(mpz_class(cc.get_den()), 0, 0);
    MeasSet omega(sets.front().window, sets.front().resolution);
    for (const auto& e : sets) {
        StepFunction m = dyadic_maximal(e.indicator());
        // M > (num/den) |E_j| / |E_i|  iff  den M |E_i| > num |E_j|.
        ExactScalar rhs = num_c * e.measure();
        for (std::size_t cell = 0; cell < omega.cells.size(); ++cell)
            if (rhs < den_c * m.values[cell] * denom) omega.cells[cell] = true;
    }
    return omega;
}

// E' = E \ Omega, guarded so that |E'| >= |E| / 2 holds exactly.
inline MeasSet major_subset(const MeasSet& e, const MeasSet& omega) {
    require_same_grid(e, omega);
    if (e.measure() < ExactScalar(2) * omega.measure())
        throw MajorityViolation("exceptional set exceeds half the measure");
    return set_difference(e, omega);
}

// Quartiles whose time interval escapes the set.
inline std::vector<Quartile> restrict_escaping(const std::vector<Quartile>& coll,
                                               const MeasSet& omega) {
    StepFunction ind = omega.indicator();
    std::vector<Quartile> out;
    for (const auto& p : coll) {
        DyadicInterval t = p.time();
        bool inside = interval_subset(t, omega.window) &&
                      integral_over(ind, t) == ExactScalar::pow2(t.scale);
        if (!inside) out.push_back(p);
    }
    return out;
}

// One +-1/0 value per grid cell and slot; the working currency of the
// ascent and of the cached form evaluators.
using SignPattern = std::vector<std::vector<double>>;
using FormCallback = std::function<double(const SignPattern&)>;

// Exact step functions recovered from a sign pattern on support grids.
inline std::vector<StepFunction> pattern_functions(
    const std::vector<MeasSet>& supports, const SignPattern& pattern) {
    std::vector<StepFunction> fs;
    for (std::size_t s = 0; s < supports.size(); ++s) {
        fs.emplace_back(supports[s].window, supports[s].resolution);
        for (std::size_t c = 0; c < supports[s].cells.size(); ++c)
            if (pattern[s][c] != 0.0)
                fs.back().values[c] = ExactScalar(pattern[s][c] > 0 ? 1 : -1);
    }
    return fs;
}

struct SupResult {
    double value = 0.0;  // |Lambda| at the best sign pattern
    std::vector<StepFunction> witnesses;
    int sweeps = 0;
};

/*
 * Block coordinate ascent for sup |form| over products of X(E_j): start
 * from a sign pattern on the support cells, flip one cell at a time and
 * keep strict improvements of |form|.  Each flip decision compares the
 * affine restriction at both endpoints, so a full sweep is monotone and
 * the iteration stops at a sign-stable point.  Restart 0 is the all-plus
 * pattern; later restarts draw random signs.
 */
inline SupResult sup_over_X(const FormCallback& form,
                            const std::vector<MeasSet>& supports, int restarts,
                            Rng& rng) {
    if (supports.empty()) throw PreconditionViolated("no support sets");
    if (restarts < 1) restarts = 1;

    std::vector<std::vector<std::size_t>> on(supports.size());
    bool any = false;
    for (std::size_t s = 0; s < supports.size(); ++s)
        for (std::size_t c = 0; c < supports[s].cells.size(); ++c)
            if (supports[s].cells[c]) {
                on[s].push_back(c);
                any = true;
            }

    SupResult best;
    SignPattern best_pattern(supports.size());
    for (std::size_t s = 0; s < supports.size(); ++s)
        best_pattern[s].assign(supports[s].cells.size(), 0.0);
    if (!any) {
        best.witnesses = pattern_functions(supports, best_pattern);
        return best;
    }

    for (int r = 0; r < restarts; ++r) {
        SignPattern pattern(supports.size());
        for (std::size_t s = 0; s < supports.size(); ++s) {
            pattern[s].assign(supports[s].cells.size(), 0.0);
            for (std::size_t c : on[s])
                pattern[s][c] = (r == 0 || !rng.coin()) ? 1.0 : -1.0;
        }
        double cur = form(pattern);
        int sweeps = 0;
        while (sweeps < 40) {
            ++sweeps;
            bool improved = false;
            for (std::size_t s = 0; s < supports.size(); ++s)
                for (std::size_t c : on[s]) {
                    pattern[s][c] = -pattern[s][c];
                    double cand = form(pattern);
                    if (std::fabs(cand) >
                        std::fabs(cur) * (1 + 1e-12) + 1e-300) {
                        cur = cand;
                        improved = true;
                    } else {
                        pattern[s][c] = -pattern[s][c];
                    }
                }
            if (!improved) break;
        }
        best.sweeps += sweeps;
        if (std::fabs(cur) > best.value) {
            best.value = std::fabs(cur);
            best_pattern = pattern;
        }
    }
    best.witnesses = pattern_functions(supports, best_pattern);
    return best;
}

namespace harness_detail {

// Exact packet integrals over the grid cells meeting the packet support,
// frozen to doubles once so form evaluations are plain dot products.
struct PacketRow {
    std::size_t first = 0;
    std::vector<double> cell;
};

inline std::pair<long, long> cell_span(const DyadicInterval& iv,
                                       const DyadicInterval& window, long res) {
    long first = window.index * (1L << (window.scale + res));
    if (iv.scale <= -res) return {iv.ancestor_at(-res).index - first, 1};
    long n = 1L << (iv.scale + res);
    return {iv.index * n - first, n};
}

inline PacketRow packet_row(const Tile& t, const DyadicInterval& window,
                            long res) {
    if (!interval_subset(t.time(), window))
        throw WindowTooSmall("packet support escapes the grid window");
    long K = std::max(packet_resolution(t), res);
    StepFunction phi = wave_packet(t, K);
    auto [lo, n] = cell_span(t.time(), window, res);
    long first = window.index * (1L << (window.scale + res));
    PacketRow out;
    out.first = static_cast<std::size_t>(lo);
    out.cell.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        out.cell[static_cast<std::size_t>(i)] =
            integral_over(phi, {-res, first + lo + i}).to_double();
    return out;
}

inline double row_dot(const std::vector<double>& f, const PacketRow& row) {
    double a = 0.0;
    for (std::size_t i = 0; i < row.cell.size(); ++i)
        a += f[row.first + i] * row.cell[i];
    return a;
}

// One-collection trilinear pairing with cached packet rows.
struct FastTriForm {
    std::array<std::vector<PacketRow>, 3> rows;
    std::vector<double> weight;  // 2^{k/2}

    double eval(const SignPattern& fs) const {
        double total = 0.0;
        for (std::size_t p = 0; p < weight.size(); ++p) {
            double prod = weight[p];
            for (int s = 0; s < 3 && prod != 0.0; ++s)
                prod *= row_dot(fs[static_cast<std::size_t>(s)],
                                rows[static_cast<std::size_t>(s)][p]);
            total += prod;
        }
        return total;
    }
};

inline FastTriForm make_fast_tri(const std::vector<Quartile>& coll,
                                 const DyadicInterval& window, long res) {
    FastTriForm f;
    for (const auto& p : coll) {
        f.weight.push_back(ExactScalar::half_power(p.k).to_double());
        for (int s = 1; s <= 3; ++s)
            f.rows[static_cast<std::size_t>(s - 1)].push_back(
                packet_row(p.subtile(s), window, res));
    }
    return f;
}

// First component of the two-collection pairing: inner quartiles carry
// (f_1, f_2), outer quartiles carry (f_3, f_4), and each contributing pair
// has its packet inner product and both half-power weights folded into one
// exact-then-double coefficient.
struct FastQuadForm {
    std::vector<PacketRow> inner1, inner2, outer2, outer3;
    struct Pair {
        std::size_t p = 0, q = 0;
        double w = 0.0;
    };
    std::vector<Pair> pairs;

    double eval(const SignPattern& fs) const {
        std::vector<double> u(inner1.size()), v(outer2.size());
        for (std::size_t q = 0; q < u.size(); ++q)
            u[q] = row_dot(fs[0], inner1[q]) * row_dot(fs[1], inner2[q]);
        for (std::size_t p = 0; p < v.size(); ++p)
            v[p] = row_dot(fs[2], outer2[p]) * row_dot(fs[3], outer3[p]);
        double total = 0.0;
        for (const auto& pr : pairs) total += pr.w * u[pr.q] * v[pr.p];
        return total;
    }
};

inline FastQuadForm make_fast_quad(const std::vector<Quartile>& outer,
                                   const std::vector<Quartile>& inner,
                                   const DyadicInterval& window, long res) {
    FastQuadForm f;
    for (const auto& q : inner) {
        f.inner1.push_back(packet_row(q.subtile(1), window, res));
        f.inner2.push_back(packet_row(q.subtile(2), window, res));
    }
    for (const auto& p : outer) {
        f.outer2.push_back(packet_row(p.subtile(2), window, res));
        f.outer3.push_back(packet_row(p.subtile(3), window, res));
    }
    for (const auto& pr : quartile_pairs(outer, inner, 1)) {
        ExactScalar w = pr.ip * ExactScalar::half_power(outer[pr.p_index].k) *
                        ExactScalar::half_power(inner[pr.q_index].k);
        f.pairs.push_back({pr.p_index, pr.q_index, w.to_double()});
    }
    return f;
}

}  // namespace harness_detail

inline int bad_index(Regime r) {
    switch (r) {
        case Regime::bht: return 3;
        case Regime::a9_a12: return 1;
        default: return 4;
    }
}

inline std::size_t set_count(Regime r) {
    return r == Regime::bht ? 3u : 4u;
}

inline std::vector<mpq_class> default_alpha(Regime r) {
    switch (r) {
        case Regime::bht:
            return {frac(4, 5), frac(11, 20), frac(-7, 20)};
        case Regime::a9_a12:
            return {frac(-9, 20), frac(19, 20), frac(1, 20), frac(9, 20)};
        default:
            return {frac(15, 16), frac(1, 2), frac(3, 4), frac(-19, 16)};
    }
}

/*
 * The measure sweep is scale-covariant: at measure exponent s the window
 * is [0, 2^{s+margin}), the grid always holds 2^{cell_exponent} cells, the
 * quartile scales span k_range octaves down from the window, and each set
 * occupies 2^{cell_exponent - margin} cells.  Dyadic dilation maps the
 * whole trial at exponent s to a trial at exponent 0, scaling the form
 * and the measure power by the same exact power of two, so the ratio
 * distribution is identical across scales and any drift measured by the
 * slope is a genuine uniformity failure.
 */
struct ExperimentConfig {
    std::uint64_t seed = 2026;
    Regime regime = Regime::bht;
    std::vector<mpq_class> alpha;  // empty selects the regime default
    long cell_exponent = 7;        // grid cells per window: 2^7
    long window_margin = 2;        // window measure = 2^2 x set measure
    long k_range = 6;              // time-scale span below the window scale
    long freq_max = 3;
    std::size_t outer_count = 64;
    std::size_t inner_count = 64;
    std::vector<long> measure_exponents = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    mpq_class threshold_c = 16;
    int restarts = 3;
    int trials_per_scale = 3;
    int denominator_index = 0;  // 0 selects the regime's bad index
    unsigned jobs = 1;
};

struct TrialData {
    std::uint64_t trial_seed = 0;
    long scale_exp = 0;
    DyadicInterval window{0, 0};
    long resolution = 0;
    std::vector<Quartile> outer, inner;
    std::vector<Quartile> outer_restricted, inner_restricted;
    std::vector<MeasSet> sets, majors;
    MeasSet omega;
    SupResult sup;
    double measure_power = 0.0;
    double ratio = 0.0;
};

/*
 * One trial: generate collections and E-sets with exact measure 2^s each,
 * form the exceptional set at the configured constant, replace the bad-
 * index set by its major subset, restrict the collection(s) the regime
 * allows (time interval not swallowed by Omega), and ascend to a sign
 * pattern maximizing |Lambda|.  Everything is derived from a per-trial
 * forked stream, so trials are independent of evaluation order.
 */
inline TrialData run_trial(const ExperimentConfig& cfg, long scale_exp,
                           int rep) {
    if (cfg.window_margin < 0 || cfg.k_range < 0)
        throw PreconditionViolated("window margin and scale span must be >= 0");
    if (cfg.cell_exponent < cfg.window_margin)
        throw PreconditionViolated("grid too coarse to hold one set cell");
    if (scale_exp + cfg.window_margin < 0)
        throw PreconditionViolated("window scale would be negative");
    std::size_t n = set_count(cfg.regime);
    std::vector<mpq_class> alpha =
        cfg.alpha.empty() ? default_alpha(cfg.regime) : cfg.alpha;
    AdmissibleTuple checked(alpha);
    if (checked.alpha.size() != n)
        throw PreconditionViolated("alpha arity does not match the regime");

    TrialData out;
    out.scale_exp = scale_exp;
    out.window = {scale_exp + cfg.window_margin, 0};
    out.resolution = cfg.cell_exponent - scale_exp - cfg.window_margin;
    std::uint64_t stream =
        static_cast<std::uint64_t>(scale_exp + 512) * 4096u +
        static_cast<std::uint64_t>(rep);
    Rng rng = Rng(cfg.seed).fork(stream);
    out.trial_seed = rng.seed();

    QuartileGenConfig qc;
    qc.window = out.window;
    qc.kmin = -out.window.scale;
    qc.kmax = qc.kmin + cfg.k_range;
    qc.freq_max = cfg.freq_max;
    qc.count = cfg.outer_count;
    qc.seed = rng.next();
    out.outer = gen_quartiles(qc);
    if (cfg.regime != Regime::bht) {
        qc.count = cfg.inner_count;
        qc.seed = rng.next();
        out.inner = gen_quartiles(qc);
    }

    long cells = 1L << (cfg.cell_exponent - cfg.window_margin);
    for (std::size_t j = 0; j < n; ++j)
        out.sets.push_back(random_with_cell_count(out.window, out.resolution,
                                                  cells, rng));

    int denom = cfg.denominator_index > 0 ? cfg.denominator_index
                                          : bad_index(cfg.regime);
    out.omega = exceptional_set(out.sets, denom, cfg.threshold_c);
    out.majors = out.sets;
    int bad = bad_index(cfg.regime);
    out.majors[static_cast<std::size_t>(bad - 1)] =
        major_subset(out.sets[static_cast<std::size_t>(bad - 1)], out.omega);

    switch (cfg.regime) {
        case Regime::bht:
            out.outer_restricted = restrict_escaping(out.outer, out.omega);
            break;
        case Regime::a9_a12:
            out.outer_restricted = out.outer;
            out.inner_restricted = restrict_escaping(out.inner, out.omega);
            break;
        case Regime::a1_a2:
            out.outer_restricted = restrict_escaping(out.outer, out.omega);
            out.inner_restricted = restrict_escaping(out.inner, out.omega);
            break;
    }

    if (cfg.regime == Regime::bht) {
        harness_detail::FastTriForm fast = harness_detail::make_fast_tri(
            out.outer_restricted, out.window, out.resolution);
        auto cb = [&fast](const SignPattern& fs) { return fast.eval(fs); };
        out.sup = sup_over_X(cb, out.majors, cfg.restarts, rng);
    } else {
        harness_detail::FastQuadForm fast = harness_detail::make_fast_quad(
            out.outer_restricted, out.inner_restricted, out.window,
            out.resolution);
        auto cb = [&fast](const SignPattern& fs) { return fast.eval(fs); };
        out.sup = sup_over_X(cb, out.majors, cfg.restarts, rng);
    }

    out.measure_power = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        out.measure_power *= std::pow(out.sets[j].measure().to_double(),
                                      alpha[j].get_d());
    out.ratio = out.measure_power > 0.0 ? out.sup.value / out.measure_power
                                        : 0.0;
    return out;
}

struct TrialRecord {
    std::uint64_t trial_seed = 0;
    long scale_exp = 0;
    int rep = 0;
    double measure = 0.0;  // common |E_j| of the trial
    std::size_t outer_size = 0, inner_size = 0;
    std::size_t outer_restricted = 0, inner_restricted = 0;
    double omega_measure = 0.0;
    double sup_value = 0.0;
    double ratio = 0.0;
};

struct ExperimentReport {
    std::vector<TrialRecord> trials;  // ordered by (scale, rep)
    std::vector<long> scales;
    std::vector<double> max_ratio_per_scale;
    double max_ratio = 0.0;
    double slope = 0.0;  // log2 max-ratio against the measure exponent
};

inline ExperimentReport restricted_type_experiment(
    const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.scales = cfg.measure_exponents;
    const std::size_t reps =
        static_cast<std::size_t>(std::max(cfg.trials_per_scale, 1));
    report.trials.resize(report.scales.size() * reps);

    auto worker = [&](std::size_t start, std::size_t stride) {
        for (std::size_t idx = start; idx < report.trials.size();
             idx += stride) {
            long s = report.scales[idx / reps];
            int rep = static_cast<int>(idx % reps);
            TrialData data = run_trial(cfg, s, rep);
            TrialRecord rec;
            rec.trial_seed = data.trial_seed;
            rec.scale_exp = s;
            rec.rep = rep;
            rec.measure = data.sets.front().measure().to_double();
            rec.outer_size = data.outer.size();
            rec.inner_size = data.inner.size();
            rec.outer_restricted = data.outer_restricted.size();
            rec.inner_restricted = data.inner_restricted.size();
            rec.omega_measure = data.omega.measure().to_double();
            rec.sup_value = data.sup.value;
            rec.ratio = data.ratio;
            report.trials[idx] = rec;
        }
    };
    unsigned jobs = std::max(cfg.jobs, 1u);
    if (jobs == 1 || report.trials.size() < 2) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker, t, jobs);
        for (auto& th : pool) th.join();
    }

    // Per-scale maxima and the log-log growth slope; only scales with a
    // positive max ratio enter the fit (the zero case is skipped by
    // convention).
    std::vector<double> xs, ys;
    for (std::size_t g = 0; g < report.scales.size(); ++g) {
        double m = 0.0;
        for (std::size_t r = 0; r < reps; ++r)
            m = std::max(m, report.trials[g * reps + r].ratio);
        report.max_ratio_per_scale.push_back(m);
        report.max_ratio = std::max(report.max_ratio, m);
        if (m > 0.0) {
            xs.push_back(static_cast<double>(report.scales[g]));
            ys.push_back(std::log2(m));
        }
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double num = 0, den = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        if (den > 0) report.slope = num / den;
    }
    return report;
}

}  // namespace walshtf
