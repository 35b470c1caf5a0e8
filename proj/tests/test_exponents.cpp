#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <vector>

#include "walshtf/exponents.hpp"
#include "walshtf/rational_simplex.hpp"
#include "walshtf/rng.hpp"

using namespace walshtf;

namespace {

using Alpha = std::array<mpq_class, 4>;

// Convex-hull membership via a bare feasibility program, independent of
// the library's classification routines.
bool representable(const std::vector<Alpha>& pts, const Alpha& y) {
    LinearProgram lp;
    const std::size_t n = pts.size();
    lp.c.assign(n, mpq_class());
    lp.a.assign(4, std::vector<mpq_class>(n));
    lp.b.assign(4, mpq_class());
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t i = 0; i < n; ++i) lp.a[r][i] = pts[i][r];
        lp.b[r] = y[r];
    }
    for (std::size_t i = 0; i < n; ++i) lp.a[3][i] = 1;
    lp.b[3] = 1;
    return solve_lp(lp).status == LpStatus::optimal;
}

Region conjunction(Region a, Region b) {
    if (a == Region::outside || b == Region::outside) return Region::outside;
    if (a == Region::interior && b == Region::interior)
        return Region::interior;
    return Region::boundary;
}

Alpha random_unit_sum(Rng& rng) {
    Alpha y;
    mpq_class sum;
    for (int t = 0; t < 3; ++t) {
        y[t] = frac(rng.range(-6, 6), rng.range(1, 5));
        sum += y[t];
    }
    y[3] = 1 - sum;
    return y;
}

}  // namespace

TEST_CASE("rational literals parse exactly") {
    CHECK(rational_from_string("1/2") == frac(1, 2));
    CHECK(rational_from_string("6/8") == frac(3, 4));
    CHECK(rational_from_string("-3/2") == frac(-3, 2));
    CHECK(rational_from_string("0.5") == frac(1, 2));
    CHECK(rational_from_string("-1.5") == frac(-3, 2));
    CHECK(rational_from_string("-0.25") == frac(-1, 4));
    CHECK(rational_from_string(".5") == frac(1, 2));
    CHECK(rational_from_string("2") == 2);
    CHECK(rational_from_string("-7") == -7);
    CHECK(rational_from_string("0.125") == frac(1, 8));
    CHECK_THROWS_AS(rational_from_string(""), ParseError);
    CHECK_THROWS_AS(rational_from_string("x"), ParseError);
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("1.2.3"), ParseError);
    CHECK_THROWS_AS(rational_from_string("."), ParseError);
}

TEST_CASE("exact simplex solves small programs") {
    LinearProgram lp;
    lp.c = {-1, -1};
    lp.a = {{1, 2}};
    lp.b = {2};
    LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == -2);
    CHECK(r.x == std::vector<mpq_class>{2, 0});

    lp.c = {-1, 0};
    lp.a = {{3, 2}};
    lp.b = {1};
    r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == frac(-1, 3));
    CHECK(r.x[0] == frac(1, 3));

    lp.c = {0, 0};
    lp.a = {{1, 1}};
    lp.b = {-1};
    CHECK(solve_lp(lp).status == LpStatus::infeasible);

    lp.c = {-1, 0};
    lp.a = {{1, -1}};
    lp.b = {0};
    CHECK(solve_lp(lp).status == LpStatus::unbounded);

    // Redundant constraints exercise the artificial-cleanup path.
    lp.c = {-1, 0};
    lp.a = {{1, 1}, {1, 1}, {2, 2}};
    lp.b = {1, 1, 2};
    r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == -1);
    CHECK(r.x == std::vector<mpq_class>{1, 0});

    // No constraints at all.
    lp.a.clear();
    lp.b.clear();
    lp.c = {1, 2};
    r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == 0);
    lp.c = {-1};
    CHECK(solve_lp(lp).status == LpStatus::unbounded);

    lp.c = {1, 2};
    lp.a = {{1}};
    lp.b = {1};
    CHECK_THROWS_AS(solve_lp(lp), PreconditionViolated);
    lp.a = {{1, 1}};
    lp.b = {1, 2};
    CHECK_THROWS_AS(solve_lp(lp), PreconditionViolated);
}

TEST_CASE("vertex tables are on the hyperplane and extremal") {
    const auto& prime = vertices_D_prime().vertices;
    const auto& dbl = vertices_D_doubleprime().vertices;
    REQUIRE(prime.size() == 12);
    REQUIRE(dbl.size() == 12);

    CHECK(prime[4] == Alpha{frac(1, 1), frac(-1, 2), frac(0, 1), frac(1, 2)});
    CHECK(dbl[1] == Alpha{frac(1, 1), frac(1, 1), frac(1, 2), frac(-3, 2)});

    for (std::size_t i = 0; i < 12; ++i) {
        mpq_class s = prime[i][0] + prime[i][1] + prime[i][2] + prime[i][3];
        CHECK(s == 1);
        CHECK(dbl[i] == swap13(prime[i]));
        CHECK(swap13(dbl[i]) == prime[i]);
    }

    // Every tabulated point is genuinely extreme: it is in the hull of the
    // full table but not of the other eleven.
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(representable(prime, prime[i]));
        std::vector<Alpha> others;
        for (std::size_t j = 0; j < 12; ++j)
            if (j != i) others.push_back(prime[j]);
        CHECK_FALSE(representable(others, prime[i]));
    }
}

TEST_CASE("facet systems support the hulls") {
    using namespace exponent_detail;
    const auto& fp = facet_list(PolytopeId::d_prime);
    const auto& fd = facet_list(PolytopeId::d_doubleprime);
    const auto& fboth = facet_list(PolytopeId::d);
    CHECK(fp.size() >= 4);
    CHECK(fd.size() == fp.size());
    CHECK(fboth.size() <= fp.size() + fd.size());
    CHECK(fboth.size() >= fp.size());
    WARN("facet counts: single hull " << fp.size() << ", intersection "
                                      << fboth.size());

    for (const auto& v : chart_vertices(PolytopeId::d_prime)) {
        std::size_t tight = 0;
        for (const auto& f : fp) {
            int c = cmp(dot(f.normal, v), f.offset);
            CHECK(c <= 0);
            if (c == 0) ++tight;
        }
        CHECK(tight >= 3);
        CHECK(classify_against(fp, v) == Region::boundary);
    }
}

TEST_CASE("frozen classifications") {
    Alpha a{frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2)};
    CHECK(in_D(a, PolytopeId::d) == Region::interior);
    CHECK(classify_by_facets(a, PolytopeId::d) == Region::interior);
    CHECK(classify_by_combination(a, PolytopeId::d) == Region::interior);
    CHECK(in_D(a, PolytopeId::d_prime) == Region::interior);
    CHECK(in_D(a, PolytopeId::d_doubleprime) == Region::interior);

    Alpha quarter{frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4)};
    CHECK(classify_by_facets(quarter, PolytopeId::d) == Region::interior);
    CHECK(classify_by_combination(quarter, PolytopeId::d) == Region::interior);

    for (const auto& v : vertices_D_prime().vertices) {
        CHECK(classify_by_combination(v, PolytopeId::d_prime) ==
              Region::boundary);
        CHECK(classify_by_facets(v, PolytopeId::d_prime) == Region::boundary);
    }
    for (const auto& v : vertices_D_doubleprime().vertices) {
        CHECK(classify_by_combination(v, PolytopeId::d_doubleprime) ==
              Region::boundary);
    }

    // The hull centroid is a strictly positive combination, hence interior.
    Alpha centroid{frac(1, 3), frac(1, 3), frac(1, 6), frac(1, 6)};
    CHECK(classify_by_combination(centroid, PolytopeId::d_prime) ==
          Region::interior);

    Alpha far{frac(2, 1), frac(2, 1), frac(-1, 1), frac(-2, 1)};
    for (auto which :
         {PolytopeId::d_prime, PolytopeId::d_doubleprime, PolytopeId::d}) {
        CHECK(classify_by_facets(far, which) == Region::outside);
        CHECK(classify_by_combination(far, which) == Region::outside);
    }
    Alpha nudged{frac(11, 10), frac(2, 5), frac(1, 1), frac(-3, 2)};
    CHECK(in_D(nudged, PolytopeId::d_prime) == Region::outside);

    Alpha off{1, 1, 1, 1};
    CHECK_THROWS_AS(in_D(off, PolytopeId::d), NotOnHyperplane);
    CHECK_THROWS_AS(classify_by_facets(off, PolytopeId::d_prime),
                    NotOnHyperplane);
    CHECK_THROWS_AS(classify_by_combination(off, PolytopeId::d_doubleprime),
                    NotOnHyperplane);
}

TEST_CASE("route agreement and symmetry on sampled points") {
    Rng rng(2026);
    int counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 250; ++trial) {
        Alpha y = random_unit_sum(rng);
        Region by_parts[2];
        for (auto which : {PolytopeId::d_prime, PolytopeId::d_doubleprime}) {
            Region fc = classify_by_facets(y, which);
            Region cc = classify_by_combination(y, which);
            CHECK(fc == cc);
            by_parts[which == PolytopeId::d_prime ? 0 : 1] = cc;
        }
        Region direct = classify_by_facets(y, PolytopeId::d);
        CHECK(direct == conjunction(by_parts[0], by_parts[1]));
        CHECK(direct == classify_by_combination(y, PolytopeId::d));

        Alpha flipped = swap13(y);
        CHECK(classify_by_facets(flipped, PolytopeId::d_doubleprime) ==
              classify_by_facets(y, PolytopeId::d_prime));
        CHECK(in_D(flipped, PolytopeId::d) == in_D(y, PolytopeId::d));
        ++counts[static_cast<int>(direct)];
    }
    WARN("random sample regions: interior " << counts[0] << ", boundary "
                                            << counts[1] << ", outside "
                                            << counts[2]);

    // Hull-biased sampling: rational convex combinations of the table.
    const auto& prime = vertices_D_prime().vertices;
    for (int trial = 0; trial < 120; ++trial) {
        std::array<long, 12> w{};
        long total = 0;
        bool positive = true;
        for (auto& x : w) {
            x = rng.range(0, 4);
            total += x;
            if (x == 0) positive = false;
        }
        if (total == 0) continue;
        Alpha y{};
        for (std::size_t i = 0; i < 12; ++i)
            for (int t = 0; t < 4; ++t)
                y[t] += frac(w[i], total) * prime[i][t];
        Region fc = classify_by_facets(y, PolytopeId::d_prime);
        CHECK(fc == classify_by_combination(y, PolytopeId::d_prime));
        CHECK(fc != Region::outside);
        if (positive) CHECK(fc == Region::interior);
    }
}

TEST_CASE("admissible tuple validation") {
    CHECK_NOTHROW(AdmissibleTuple(
        {frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2)}));
    CHECK_NOTHROW(AdmissibleTuple(
        {frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4)}));
    CHECK_NOTHROW(AdmissibleTuple({frac(4, 5), frac(11, 20), frac(-7, 20)}));

    CHECK_THROWS_AS(AdmissibleTuple({frac(1, 2), frac(1, 2), frac(1, 2),
                                     frac(1, 2)}),
                    NotOnHyperplane);
    CHECK_THROWS_AS(AdmissibleTuple({frac(1, 1), frac(1, 2), frac(-1, 2)}),
                    PreconditionViolated);
    CHECK_THROWS_AS(AdmissibleTuple({frac(3, 2), frac(0, 1), frac(0, 1),
                                     frac(-1, 2)}),
                    PreconditionViolated);
    CHECK_THROWS_AS(AdmissibleTuple({frac(9, 10), frac(9, 10), frac(-2, 5),
                                     frac(-2, 5)}),
                    PreconditionViolated);
    CHECK_THROWS_AS(AdmissibleTuple({frac(1, 2), frac(1, 2)}),
                    PreconditionViolated);
}

TEST_CASE("theta substitutions on frozen tuples") {
    CHECK_THROWS_AS(
        theta_map(AdmissibleTuple({frac(9, 10), frac(9, 20), frac(-7, 20)}),
                  Regime::bht),
        ThetaOutOfRange);

    ThetaParams p = theta_map(
        AdmissibleTuple({frac(4, 5), frac(11, 20), frac(-7, 20)}),
        Regime::bht);
    CHECK(p.component[0] == frac(3, 5));
    CHECK(p.component[1] == frac(1, 10));
    CHECK(p.component[2] == frac(3, 10));
    CHECK_FALSE(p.split.has_value());

    p = theta_map(AdmissibleTuple({frac(-9, 20), frac(19, 20), frac(1, 20),
                                   frac(9, 20)}),
                  Regime::a9_a12);
    CHECK(p.component[0] == frac(1, 10));
    CHECK(p.component[1] == frac(9, 10));
    CHECK(p.component[2] == 0);
    REQUIRE(p.split.has_value());
    CHECK(*p.split == frac(9, 10));

    p = theta_map(AdmissibleTuple({frac(15, 16), frac(1, 2), frac(3, 4),
                                   frac(-19, 16)}),
                  Regime::a1_a2);
    CHECK(p.component[0] == frac(7, 8));
    CHECK(p.component[1] == 0);
    CHECK(p.component[2] == frac(1, 8));
    REQUIRE(p.split.has_value());
    CHECK(*p.split == frac(2, 7));

    AdmissibleTuple four({frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2)});
    AdmissibleTuple three({frac(4, 5), frac(11, 20), frac(-7, 20)});
    CHECK_THROWS_AS(theta_map(four, Regime::bht), PreconditionViolated);
    CHECK_THROWS_AS(theta_map(three, Regime::a9_a12), PreconditionViolated);
    CHECK_THROWS_AS(theta_map(three, Regime::a1_a2), PreconditionViolated);
    // Vanishing tail sum has no finite split parameter.
    CHECK_THROWS_AS(theta_map(four, Regime::a9_a12), ThetaOutOfRange);
    CHECK_THROWS_AS(theta_map(four, Regime::a1_a2), ThetaOutOfRange);
}

TEST_CASE("theta constraints hold along vertex-approach sequences") {
    std::vector<mpq_class> eps = {frac(1, 4), frac(1, 8), frac(1, 32),
                                  frac(1, 128)};
    const auto& prime = vertices_D_prime().vertices;

    for (const auto& e : eps) {
        // Toward the three-exponent corner (1, 1/2, -1/2).
        AdmissibleTuple b({1 - e, frac(1, 2), frac(-1, 2) + e});
        ThetaParams p = theta_map(b, Regime::bht);
        CHECK(p.component[0] == 1 - 2 * e);
        CHECK(p.component[1] == 0);
        CHECK(p.component[2] == 2 * e);
        CHECK(p.component[0] + p.component[1] + p.component[2] == 1);

        // Toward the ninth tabulated corner.
        AdmissibleTuple nine(
            {frac(-1, 2) + e, 1 - e, mpq_class(e), frac(1, 2) - e});
        p = theta_map(nine, Regime::a9_a12);
        CHECK(p.component[0] == 2 * e);
        CHECK(p.component[1] == 1 - 2 * e);
        CHECK(p.component[2] == 0);
        REQUIRE(p.split.has_value());
        CHECK(*p.split == 1 - 2 * e);
        for (int t = 0; t < 4; ++t)
            CHECK(abs(nine.alpha[t] - prime[8][t]) == e);

        // Toward the first tabulated corner.
        AdmissibleTuple one({1 - e / 2, frac(1, 2), 1 - 2 * e,
                             frac(-3, 2) + 5 * e / 2});
        p = theta_map(one, Regime::a1_a2);
        CHECK(p.component[0] == 1 - e);
        CHECK(p.component[1] == 0);
        CHECK(p.component[2] == mpq_class(e));
        REQUIRE(p.split.has_value());
        CHECK(*p.split == 2 * e / (1 - e));
        for (int t = 0; t < 4; ++t)
            CHECK(abs(one.alpha[t] - prime[0][t]) <= frac(5, 2) * e);
    }
}
