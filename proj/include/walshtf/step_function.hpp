#pragma once

// Finite-resolution step functions with exact values.
//
// A StepFunction lives on a dyadic window and is constant on cells of
// length 2^-resolution; it is zero outside the window.  All integrals,
// inner products and L^p data are computed in exact arithmetic.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "walshtf/dyadic_interval.hpp"
#include "walshtf/errors.hpp"
#include "walshtf/exact_scalar.hpp"

namespace walshtf {

struct StepFunction {
    DyadicInterval window{0, 0};
    long resolution = 0;  // cells have length 2^-resolution
    std::vector<ExactScalar> values;

    StepFunction() { values.resize(1); }

    StepFunction(DyadicInterval w, long res) : window(w), resolution(res) {
        if (w.scale + res < 0)
            throw ResolutionTooCoarse("window shorter than one cell");
        values.resize(static_cast<std::size_t>(1) << (w.scale + res));
    }

    StepFunction(DyadicInterval w, long res, std::vector<ExactScalar> vals)
        : StepFunction(w, res) {
        if (vals.size() != values.size())
            throw WindowTooSmall("value count does not match window and resolution");
        values = std::move(vals);
    }

    long cell_count() const { return static_cast<long>(values.size()); }

    // Global index of the first cell: cell g covers [g 2^-K, (g+1) 2^-K).
    long first_cell() const {
        return window.index * (1L << (window.scale + resolution));
    }

    DyadicInterval cell_interval(long local) const {
        return {-resolution, first_cell() + local};
    }

    // Value on the global cell g at resolution fine >= this->resolution.
    const ExactScalar& value_at(long g, long fine) const {
        static const ExactScalar zero{};
        long coarse = floor_shift(g, fine - resolution);
        long local = coarse - first_cell();
        if (local < 0 || local >= cell_count()) return zero;
        return values[static_cast<std::size_t>(local)];
    }

    bool is_zero() const {
        for (const auto& v : values)
            if (!v.is_zero()) return false;
        return true;
    }

    StepFunction refined(long fine) const {
        if (fine < resolution)
            throw ResolutionTooCoarse("cannot lower a step function resolution");
        StepFunction out(window, fine);
        long rep = 1L << (fine - resolution);
        for (long c = 0; c < cell_count(); ++c)
            for (long r = 0; r < rep; ++r)
                out.values[static_cast<std::size_t>(c * rep + r)] = values[c];
        return out;
    }

    StepFunction embedded(DyadicInterval big) const {
        if (!interval_subset(window, big))
            throw WindowTooSmall("embedding window does not contain the old one");
        StepFunction out(big, resolution);
        long off = first_cell() - out.first_cell();
        for (long c = 0; c < cell_count(); ++c)
            out.values[static_cast<std::size_t>(off + c)] = values[c];
        return out;
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

// Pointwise equality as functions on the line (windows may differ).
inline bool equal_functions(const StepFunction& f, const StepFunction& g) {
    long K = std::max(f.resolution, g.resolution);
    auto sweep = [&](const StepFunction& h) {
        long lo = h.first_cell() << (K - h.resolution);
        long cells = h.cell_count() << (K - h.resolution);
        for (long c = 0; c < cells; ++c)
            if (f.value_at(lo + c, K) != g.value_at(lo + c, K)) return false;
        return true;
    };
    return sweep(f) && sweep(g);
}

inline StepFunction operator*(const ExactScalar& c, const StepFunction& f) {
    StepFunction out = f;
    for (auto& v : out.values) v = c * v;
    return out;
}

inline StepFunction add(const StepFunction& f, const StepFunction& g) {
    auto w = common_ancestor(f.window, g.window);
    if (!w) throw WindowTooSmall("step functions have no common window");
    long K = std::max(f.resolution, g.resolution);
    StepFunction out(*w, K);
    long lo = out.first_cell();
    for (long c = 0; c < out.cell_count(); ++c)
        out.values[static_cast<std::size_t>(c)] =
            f.value_at(lo + c, K) + g.value_at(lo + c, K);
    return out;
}

inline StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return add(f, g);
}

inline StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    return add(f, ExactScalar(-1) * g);
}

inline StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
    if (interval_disjoint(f.window, g.window))
        return StepFunction(f.window, f.resolution);  // identically zero
    const StepFunction& small =
        interval_subset(f.window, g.window) ? f : g;
    long K = std::max(f.resolution, g.resolution);
    StepFunction out(small.window, K);
    long lo = out.first_cell();
    for (long c = 0; c < out.cell_count(); ++c)
        out.values[static_cast<std::size_t>(c)] =
            f.value_at(lo + c, K) * g.value_at(lo + c, K);
    return out;
}

// Exact integral of f * g over the line.
inline ExactScalar inner_product(const StepFunction& f, const StepFunction& g) {
    if (interval_disjoint(f.window, g.window)) return ExactScalar();
    const StepFunction& small = interval_subset(f.window, g.window) ? f : g;
    long K = std::max(f.resolution, g.resolution);
    long lo = small.first_cell() << (K - small.resolution);
    long cells = small.cell_count() << (K - small.resolution);
    ExactScalar sum;
    for (long c = 0; c < cells; ++c)
        sum += f.value_at(lo + c, K) * g.value_at(lo + c, K);
    return sum * ExactScalar::pow2(-K);
}

inline ExactScalar integral(const StepFunction& f) {
    ExactScalar sum;
    for (const auto& v : f.values) sum += v;
    return sum * ExactScalar::pow2(-f.resolution);
}

// Exact integral of f over a dyadic interval; intersecting dyadic
// intervals are nested, so the overlap is whichever region is smaller.
inline ExactScalar integral_over(const StepFunction& f, const DyadicInterval& region) {
    if (interval_disjoint(f.window, region)) return ExactScalar();
    DyadicInterval inner = interval_subset(region, f.window) ? region : f.window;
    long K = std::max(f.resolution, -inner.scale);
    long lo = inner.index << (inner.scale + K);
    long cells = 1L << (inner.scale + K);
    ExactScalar sum;
    for (long c = 0; c < cells; ++c) sum += f.value_at(lo + c, K);
    return sum * ExactScalar::pow2(-K);
}

inline ExactScalar l1_norm(const StepFunction& f) {
    ExactScalar sum;
    for (const auto& v : f.values) sum += v.abs();
    return sum * ExactScalar::pow2(-f.resolution);
}

inline ExactScalar l2_norm_squared(const StepFunction& f) {
    ExactScalar sum;
    for (const auto& v : f.values) sum += v * v;
    return sum * ExactScalar::pow2(-f.resolution);
}

inline double l2_norm(const StepFunction& f) {
    return std::sqrt(l2_norm_squared(f).to_double());
}

inline ExactScalar linf_norm(const StepFunction& f) {
    ExactScalar best;
    for (const auto& v : f.values) {
        ExactScalar a = v.abs();
        if (best < a) best = a;
    }
    return best;
}

// sup over lambda > 0 of lambda * |{ |f| > lambda }|, attained at a jump of
// the distribution function; compared exactly, reported as double together
// with the exact optimum.
struct WeakL1 {
    ExactScalar exact;  // lambda* |{|f| >= lambda*}| at the best breakpoint
    double value = 0.0;
};

inline WeakL1 weak_l1_norm(const StepFunction& f) {
    // Candidates are the distinct nonzero magnitudes of cells; at lambda
    // slightly below a magnitude v the superlevel set is {|f| >= v}.
    std::vector<ExactScalar> mags;
    mags.reserve(f.values.size());
    for (const auto& v : f.values)
        if (!v.is_zero()) mags.push_back(v.abs());
    if (mags.empty()) return {};
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    WeakL1 best;
    for (const auto& v : mags) {
        long cnt = 0;
        for (const auto& x : f.values)
            if (!(x.abs() < v)) ++cnt;
        ExactScalar cand = v * ExactScalar(cnt) * ExactScalar::pow2(-f.resolution);
        if (best.exact < cand) best.exact = cand;
    }
    best.value = best.exact.to_double();
    return best;
}

// Dyadic maximal function: sup of averages over dyadic intervals containing
// the point, up to intervals 2^ancestor_depth times the window length.
// Averages over ancestors of the window only shrink (the function vanishes
// outside), so the cap is safe at its default.
inline StepFunction dyadic_maximal(const StepFunction& f, long ancestor_depth = 16) {
    for (const auto& v : f.values)
        if (v.sign() < 0)
            throw PreconditionViolated("dyadic maximal input must be nonnegative");
    long levels = f.window.scale + f.resolution;  // aligned levels inside window
    StepFunction out(f.window, f.resolution);

    std::vector<std::vector<ExactScalar>> sums(static_cast<std::size_t>(levels) + 1);
    sums[0] = f.values;
    for (long t = 1; t <= levels; ++t) {
        const auto& prev = sums[static_cast<std::size_t>(t - 1)];
        auto& cur = sums[static_cast<std::size_t>(t)];
        cur.resize(prev.size() / 2);
        for (std::size_t i = 0; i < cur.size(); ++i)
            cur[i] = prev[2 * i] + prev[2 * i + 1];
    }

    // Ancestor averages: the numerator stays the full window sum at every
    // level above the window while the denominator doubles, so only finitely
    // many matter; d = 0 equals the in-window top level.
    ExactScalar total = sums[static_cast<std::size_t>(levels)][0];
    ExactScalar best_ancestor;
    for (long d = 1; d <= ancestor_depth; ++d) {
        ExactScalar avg = total * ExactScalar::pow2(-levels - d);
        if (best_ancestor < avg) best_ancestor = avg;
        if (avg.is_zero()) break;
    }

    // An interval of 2^t cells has average (raw cell sum) * 2^-t.
    for (long c = 0; c < f.cell_count(); ++c) {
        ExactScalar best = best_ancestor;
        for (long t = 0; t <= levels; ++t) {
            ExactScalar avg =
                sums[static_cast<std::size_t>(t)][static_cast<std::size_t>(c >> t)] *
                ExactScalar::pow2(-t);
            if (best < avg) best = avg;
        }
        out.values[static_cast<std::size_t>(c)] = best;
    }
    return out;
}

}  // namespace walshtf
