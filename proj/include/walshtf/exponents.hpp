#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walshtf/errors.hpp"
#include "walshtf/rational_simplex.hpp"

namespace walshtf {

/*
 * Exponent geometry for the trilinear estimates.  Mapping properties are
 * indexed by 4-tuples alpha on the hyperplane
 *
 *     S = { alpha : alpha_1 + alpha_2 + alpha_3 + alpha_4 = 1 },
 *
 * and the working range is D = D' /\ D'', the intersection of two
 * congruent polytopes inside S.  Each of D', D'' is the convex hull of
 * twelve tabulated extreme points; D'' is the image of D' under swapping
 * coordinates 1 and 3.  Membership tests are exact: either express the
 * point as a convex combination of the extreme points (a small rational
 * linear program) or check the facet inequalities recovered from the
 * extreme points by exhaustive supporting-plane enumeration.  "Interior"
 * always means interior relative to the hyperplane S.
 */

// Exact rational n/d in lowest terms.
inline mpq_class frac(long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

// Parses "3/4", "-0.25", or "7" into an exact rational.
inline mpq_class rational_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    try {
        // Base is forced to 10: the auto-detecting default would read
        // leading zeros as octal.
        if (text.find('/') != std::string::npos) {
            mpq_class v(text, 10);
            if (v.get_den() == 0) throw ParseError("zero denominator: " + text);
            v.canonicalize();
            return v;
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return mpq_class(mpz_class(text, 10));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw ParseError("bad rational literal: " + text);
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (std::size_t p = text.size() - dot - 1; p > 0; --p) den *= 10;
        mpq_class v(num, den);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + text);
    }
}

// A tuple of exponent reciprocals on S: entries sum to one, every entry is
// below one, and at most one entry is negative.
struct AdmissibleTuple {
    std::vector<mpq_class> alpha;

    explicit AdmissibleTuple(std::vector<mpq_class> entries)
        : alpha(std::move(entries)) {
        if (alpha.size() < 3)
            throw PreconditionViolated("tuple needs at least three entries");
        mpq_class sum;
        std::size_t negatives = 0;
        for (const auto& v : alpha) {
            if (v >= 1)
                throw PreconditionViolated("tuple entries must be below one");
            if (v < 0) ++negatives;
            sum += v;
        }
        if (sum != 1) throw NotOnHyperplane("tuple entries must sum to one");
        if (negatives > 1)
            throw PreconditionViolated("at most one entry may be negative");
    }
};

struct Polytope {
    std::vector<std::array<mpq_class, 4>> vertices;
};

inline std::array<mpq_class, 4> swap13(std::array<mpq_class, 4> alpha) {
    std::swap(alpha[0], alpha[2]);
    return alpha;
}

inline const Polytope& vertices_D_prime() {
    static const Polytope table = [] {
        Polytope p;
        p.vertices = {
            {frac(1, 1), frac(1, 2), frac(1, 1), frac(-3, 2)},
            {frac(1, 2), frac(1, 1), frac(1, 1), frac(-3, 2)},
            {frac(1, 2), frac(1, 1), frac(-3, 2), frac(1, 1)},
            {frac(1, 1), frac(1, 2), frac(-3, 2), frac(1, 1)},
            {frac(1, 1), frac(-1, 2), frac(0, 1), frac(1, 2)},
            {frac(1, 1), frac(-1, 2), frac(1, 2), frac(0, 1)},
            {frac(1, 2), frac(-1, 2), frac(0, 1), frac(1, 1)},
            {frac(1, 2), frac(-1, 2), frac(1, 1), frac(0, 1)},
            {frac(-1, 2), frac(1, 1), frac(0, 1), frac(1, 2)},
            {frac(-1, 2), frac(1, 1), frac(1, 2), frac(0, 1)},
            {frac(-1, 2), frac(1, 2), frac(1, 1), frac(0, 1)},
            {frac(-1, 2), frac(1, 2), frac(0, 1), frac(1, 1)},
        };
        return p;
    }();
    return table;
}

inline const Polytope& vertices_D_doubleprime() {
    static const Polytope table = [] {
        Polytope p;
        for (const auto& v : vertices_D_prime().vertices)
            p.vertices.push_back(swap13(v));
        return p;
    }();
    return table;
}

enum class PolytopeId { d_prime, d_doubleprime, d };
enum class Region { interior, boundary, outside };

inline const char* polytope_name(PolytopeId which) {
    switch (which) {
        case PolytopeId::d_prime: return "D-prime";
        case PolytopeId::d_doubleprime: return "D-double-prime";
        default: return "D";
    }
}

inline const char* region_name(Region r) {
    switch (r) {
        case Region::interior: return "interior";
        case Region::boundary: return "boundary";
        default: return "outside";
    }
}

namespace exponent_detail {

// On S the last coordinate is determined by the first three, so all hull
// computations happen in that 3-dimensional chart.
using Point3 = std::array<mpq_class, 3>;

inline Point3 project(const std::array<mpq_class, 4>& alpha) {
    return {alpha[0], alpha[1], alpha[2]};
}

inline mpq_class dot(const Point3& a, const Point3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Inequality normal . y <= offset, scaled to coprime integers.
struct Facet {
    Point3 normal;
    mpq_class offset;
};

inline bool facet_less(const Facet& a, const Facet& b) {
    for (int t = 0; t < 3; ++t) {
        int c = cmp(a.normal[t], b.normal[t]);
        if (c != 0) return c < 0;
    }
    return cmp(a.offset, b.offset) < 0;
}

inline bool facet_eq(const Facet& a, const Facet& b) {
    return !facet_less(a, b) && !facet_less(b, a);
}

inline Facet canonical_facet(Point3 normal, mpq_class offset) {
    mpz_class scale = normal[0].get_den();
    scale = lcm(scale, normal[1].get_den());
    scale = lcm(scale, normal[2].get_den());
    scale = lcm(scale, offset.get_den());
    for (auto& v : normal) v *= scale;
    offset *= scale;
    mpz_class g = gcd(normal[0].get_num(), normal[1].get_num());
    g = gcd(g, normal[2].get_num());
    g = gcd(g, offset.get_num());
    if (g > 1) {
        for (auto& v : normal) v /= g;
        offset /= g;
    }
    return Facet{std::move(normal), std::move(offset)};
}

/*
 * Supporting-plane enumeration: every facet of a full-dimensional hull in
 * three dimensions contains three affinely independent vertices, so
 * scanning all vertex triples and keeping the planes with the whole
 * vertex set on one closed side recovers exactly the facet inequalities.
 */
inline std::vector<Facet> hull_facets(const std::vector<Point3>& pts) {
    std::vector<Facet> out;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Point3 u, v;
                for (int t = 0; t < 3; ++t) {
                    u[t] = pts[j][t] - pts[i][t];
                    v[t] = pts[k][t] - pts[i][t];
                }
                Point3 normal = {u[1] * v[2] - u[2] * v[1],
                                 u[2] * v[0] - u[0] * v[2],
                                 u[0] * v[1] - u[1] * v[0]};
                if (normal[0] == 0 && normal[1] == 0 && normal[2] == 0)
                    continue;
                mpq_class offset = dot(normal, pts[i]);
                bool above = false, below = false;
                for (const auto& p : pts) {
                    int c = cmp(dot(normal, p), offset);
                    if (c > 0) above = true;
                    if (c < 0) below = true;
                }
                if (above && below) continue;
                if (above) {
                    for (auto& t : normal) t = -t;
                    offset = -offset;
                }
                out.push_back(canonical_facet(std::move(normal),
                                              std::move(offset)));
            }
    std::sort(out.begin(), out.end(), facet_less);
    out.erase(std::unique(out.begin(), out.end(), facet_eq), out.end());
    return out;
}

inline const std::vector<Point3>& chart_vertices(PolytopeId which) {
    static const auto build = [](const Polytope& p) {
        std::vector<Point3> out;
        for (const auto& v : p.vertices) out.push_back(project(v));
        return out;
    };
    static const std::vector<Point3> prime = build(vertices_D_prime());
    static const std::vector<Point3> dbl = build(vertices_D_doubleprime());
    return which == PolytopeId::d_doubleprime ? dbl : prime;
}

inline const std::vector<Facet>& facet_list(PolytopeId which) {
    static const std::vector<Facet> prime =
        hull_facets(chart_vertices(PolytopeId::d_prime));
    static const std::vector<Facet> dbl =
        hull_facets(chart_vertices(PolytopeId::d_doubleprime));
    static const std::vector<Facet> both = [] {
        std::vector<Facet> out = prime;
        out.insert(out.end(), dbl.begin(), dbl.end());
        std::sort(out.begin(), out.end(), facet_less);
        out.erase(std::unique(out.begin(), out.end(), facet_eq), out.end());
        return out;
    }();
    switch (which) {
        case PolytopeId::d_prime: return prime;
        case PolytopeId::d_doubleprime: return dbl;
        default: return both;
    }
}

inline Region classify_against(const std::vector<Facet>& facets,
                               const Point3& y) {
    bool tight = false;
    for (const auto& f : facets) {
        int c = cmp(dot(f.normal, y), f.offset);
        if (c > 0) return Region::outside;
        if (c == 0) tight = true;
    }
    return tight ? Region::boundary : Region::interior;
}

/*
 * Largest t such that y = sum lambda_i v_i with sum lambda_i = 1 and every
 * lambda_i >= t.  The hull is full-dimensional, so t > 0 characterizes the
 * interior, t = 0 the boundary, and infeasibility the outside.  Encoded as
 * lambda_i = t + mu_i with variables (t, mu) >= 0.
 */
inline std::optional<mpq_class> interior_margin(const std::vector<Point3>& pts,
                                                const Point3& y) {
    const std::size_t n = pts.size();
    LinearProgram lp;
    lp.c.assign(n + 1, mpq_class());
    lp.c[0] = -1;
    lp.a.assign(4, std::vector<mpq_class>(n + 1));
    lp.b.assign(4, mpq_class());
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            lp.a[r][0] += pts[i][r];
            lp.a[r][i + 1] = pts[i][r];
        }
        lp.b[r] = y[r];
    }
    lp.a[3][0] = static_cast<long>(n);
    for (std::size_t i = 0; i < n; ++i) lp.a[3][i + 1] = 1;
    lp.b[3] = 1;
    LpResult res = solve_lp(lp);
    if (res.status == LpStatus::infeasible) return std::nullopt;
    if (res.status != LpStatus::optimal)
        throw Error("convex-combination program cannot be unbounded");
    return mpq_class(-res.objective);
}

inline Point3 checked_chart(const std::array<mpq_class, 4>& alpha) {
    if (alpha[0] + alpha[1] + alpha[2] + alpha[3] != 1)
        throw NotOnHyperplane("point is off the unit-sum hyperplane");
    return project(alpha);
}

}  // namespace exponent_detail

// Membership by convex-combination feasibility; the intersection is the
// conjunction of the two hull tests.
inline Region classify_by_combination(const std::array<mpq_class, 4>& alpha,
                                      PolytopeId which) {
    using namespace exponent_detail;
    Point3 y = checked_chart(alpha);
    auto one = [&](PolytopeId id) {
        return interior_margin(chart_vertices(id), y);
    };
    if (which != PolytopeId::d) {
        auto t = one(which);
        if (!t) return Region::outside;
        return *t > 0 ? Region::interior : Region::boundary;
    }
    auto tp = one(PolytopeId::d_prime);
    auto td = one(PolytopeId::d_doubleprime);
    if (!tp || !td) return Region::outside;
    return (*tp > 0 && *td > 0) ? Region::interior : Region::boundary;
}

// Membership by exact facet inequalities; the intersection is tested
// against the union of both facet systems.
inline Region classify_by_facets(const std::array<mpq_class, 4>& alpha,
                                 PolytopeId which) {
    using namespace exponent_detail;
    return classify_against(facet_list(which), checked_chart(alpha));
}

// Primary classification: the hulls go through the convex-combination
// program, the intersection through its own facet system, so the
// conjunction of hull verdicts stays an independent cross-check.
inline Region in_D(const std::array<mpq_class, 4>& alpha, PolytopeId which) {
    return which == PolytopeId::d ? classify_by_facets(alpha, which)
                                  : classify_by_combination(alpha, which);
}

enum class Regime { bht, a9_a12, a1_a2 };

// Convex weights for the abstract tree bound, plus the measure-splitting
// exponent used by the four-set regimes.
struct ThetaParams {
    std::array<mpq_class, 3> component;
    std::optional<mpq_class> split;
};

/*
 * Exact substitutions turning an exponent tuple into the parameters of
 * the abstract bound.  On the unit-sum hyperplane the three component
 * weights always add to 2 sum(alpha) - 1 = 1; the range checks
 * 0 <= theta_j < 1 and 0 < split < 1 cut out each regime's validity
 * neighborhood and fail with ThetaOutOfRange elsewhere.
 */
inline ThetaParams theta_map(const AdmissibleTuple& tuple, Regime regime) {
    const auto& a = tuple.alpha;
    ThetaParams out;
    switch (regime) {
        case Regime::bht:
            if (a.size() != 3)
                throw PreconditionViolated("bht regime expects a 3-tuple");
            out.component = {2 * a[0] - 1, 2 * a[1] - 1, 2 * a[2] + 1};
            break;
        case Regime::a9_a12: {
            if (a.size() != 4)
                throw PreconditionViolated("a9-a12 regime expects a 4-tuple");
            mpq_class tail = a[2] + a[3];
            if (tail == 0) throw ThetaOutOfRange("tail sum vanishes");
            out.component = {2 * a[0] + 1, 2 * a[1] - 1, 2 * tail - 1};
            out.split = mpq_class(a[3] / tail);
            break;
        }
        case Regime::a1_a2: {
            if (a.size() != 4)
                throw PreconditionViolated("a1-a2 regime expects a 4-tuple");
            mpq_class tail = a[2] + a[3];
            if (tail == 0) throw ThetaOutOfRange("tail sum vanishes");
            out.component = {2 * a[0] - 1, 2 * a[1] - 1, 2 * tail + 1};
            out.split = mpq_class((3 * a[2] + 2 * a[3]) / tail);
            break;
        }
    }
    mpq_class sum;
    for (const auto& t : out.component) {
        if (t < 0 || t >= 1)
            throw ThetaOutOfRange("component weight outside [0,1)");
        sum += t;
    }
    if (sum != 1) throw ThetaOutOfRange("component weights must sum to one");
    if (out.split && (*out.split <= 0 || *out.split >= 1))
        throw ThetaOutOfRange("split parameter outside (0,1)");
    return out;
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::bht: return "bht";
        case Regime::a9_a12: return "A9-A12";
        default: return "A1-A2";
    }
}

}  // namespace walshtf
