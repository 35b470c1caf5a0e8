#include "walshtf/exact_scalar.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <vector>

#include "oracles.hpp"

using walshtf::ExactScalar;

TEST_CASE("product in Z[sqrt2]") {
    // (1 + sqrt2)(3 - 2 sqrt2) = -1 + sqrt2
    ExactScalar x(1, 1, 0), y(3, -2, 0);
    CHECK(x * y == ExactScalar(-1, 1, 0));
}

TEST_CASE("half powers") {
    // 2^(-3/2) = sqrt2 / 4
    ExactScalar h = ExactScalar::half_power(-3);
    CHECK(h.a() == 0);
    CHECK(h.b() == 1);
    CHECK(h.m() == 2);
    CHECK(h * h == ExactScalar::pow2(-3));

    for (long k = -21; k <= 21; ++k) {
        ExactScalar p = ExactScalar::half_power(k);
        CHECK(p * p == ExactScalar::pow2(k));
        if (k % 2 == 0) CHECK(p == ExactScalar::pow2(k / 2));
    }
    CHECK(ExactScalar::half_power(1) == ExactScalar::sqrt2());
}

TEST_CASE("canonical form") {
    // Both components even: reduce until one is odd.
    ExactScalar x(mpz_class(8), mpz_class(4), 3);
    CHECK(x.a() == 2);
    CHECK(x.b() == 1);
    CHECK(x.m() == 1);

    // Zero pins the exponent to 0.
    ExactScalar z(mpz_class(0), mpz_class(0), 7);
    CHECK(z.is_zero());
    CHECK(z.m() == 0);

    // Canonicalization is idempotent: rebuilding from components is identity.
    std::mt19937_64 rng(7001);
    for (int t = 0; t < 2000; ++t) {
        long a = static_cast<long>(rng() % 2001) - 1000;
        long b = static_cast<long>(rng() % 2001) - 1000;
        long m = static_cast<long>(rng() % 13) - 6;
        ExactScalar v(mpz_class(a), mpz_class(b), m);
        ExactScalar w(v.a(), v.b(), v.m());
        CHECK(v == w);
        if (!v.is_zero()) {
            bool a_odd = mpz_odd_p(v.a().get_mpz_t()) != 0;
            bool b_odd = mpz_odd_p(v.b().get_mpz_t()) != 0;
            CHECK((a_odd || b_odd));
        }
    }
}

TEST_CASE("addition aligns exponents") {
    CHECK(ExactScalar::pow2(-3) + ExactScalar::pow2(-3) == ExactScalar::pow2(-2));
    CHECK(ExactScalar(1, 0, 0) + ExactScalar(0, 1, 0) == ExactScalar(1, 1, 0));
    ExactScalar x(5, -3, 2);
    CHECK((x - x).is_zero());
    CHECK(x + ExactScalar() == x);
}

TEST_CASE("sign and ordering agree with high-precision oracle") {
    std::mt19937_64 rng(7002);
    for (int t = 0; t < 4000; ++t) {
        long a = static_cast<long>(rng() % 401) - 200;
        long b = static_cast<long>(rng() % 401) - 200;
        long m = static_cast<long>(rng() % 9) - 4;
        ExactScalar v(mpz_class(a), mpz_class(b), m);
        CHECK(v.sign() == oracles::sign_by_bigfloat(v));
    }
    // Ordering is consistent with subtraction sign.
    ExactScalar u(3, -2, 0), w(-1, 1, 1);
    CHECK((u < w ? (u - w).sign() < 0 : (u - w).sign() >= 0));
}

TEST_CASE("floating shadow tracks exact chains") {
    std::mt19937_64 rng(7003);
    for (int chain = 0; chain < 10000; ++chain) {
        ExactScalar v(static_cast<long>(rng() % 9) - 4);
        double shadow = v.to_double();
        int steps = 1 + static_cast<int>(rng() % 6);
        for (int s = 0; s < steps; ++s) {
            long c = static_cast<long>(rng() % 7) - 3;
            long k = static_cast<long>(rng() % 7) - 3;
            ExactScalar operand = ExactScalar(c) * ExactScalar::half_power(k);
            // The shadow operand as a plain double pipeline would form it.
            double dop = static_cast<double>(c) * std::exp2(static_cast<double>(k) / 2.0);
            switch (rng() % 3) {
                case 0:
                    v += operand;
                    shadow += dop;
                    break;
                case 1:
                    v -= operand;
                    shadow -= dop;
                    break;
                default:
                    v *= operand;
                    shadow *= dop;
                    break;
            }
        }
        double exact = v.to_double();
        double tol = 1e-12 * std::max(1.0, std::abs(shadow));
        CHECK(std::abs(exact - shadow) <= tol);
    }
}

TEST_CASE("rational view") {
    ExactScalar x(5, 0, 3);
    REQUIRE(x.is_rational());
    CHECK(x.to_mpq() == mpq_class(5, 8));
    ExactScalar y(-7, 0, -2);
    CHECK(y.to_mpq() == mpq_class(-28));
}
