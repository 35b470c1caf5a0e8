#pragma once

// Exact arithmetic in Z[sqrt(2)] with dyadic denominators.
//
// A scalar is (a + b*sqrt(2)) * 2^(-m) with arbitrary-precision integers
// a, b and a machine integer exponent m.  Every Walsh wave packet amplitude
// 2^(k/2), every inner product of step functions, and every product of such
// quantities lives in this ring, so the whole evaluation pipeline can run
// without rounding.  Note (a + b*sqrt2)(c + d*sqrt2) = (ac + 2bd) + (ad + bc)*sqrt2.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "walshtf/errors.hpp"

namespace walshtf {

class ExactScalar {
public:
    ExactScalar() : a_(0), b_(0), m_(0) {}
    ExactScalar(long v) : a_(v), b_(0), m_(0) { canonicalize(); }
    ExactScalar(mpz_class a, mpz_class b, long m)
        : a_(std::move(a)), b_(std::move(b)), m_(m) {
        canonicalize();
    }

    // 2^(k/2); for odd k the value is sqrt(2) * 2^((k-1)/2).
    static ExactScalar half_power(long k) {
        if (k % 2 == 0) return ExactScalar(1, 0, -k / 2);
        // k odd makes k-1 even, so truncating division is exact.
        return ExactScalar(0, 1, -((k - 1) / 2));
    }

    static ExactScalar pow2(long e) { return ExactScalar(1, 0, -e); }

    static ExactScalar sqrt2() { return ExactScalar(0, 1, 0); }

    // Every finite double is a dyadic rational, so this conversion is exact.
    static ExactScalar from_double(double d) {
        if (!std::isfinite(d))
            throw PreconditionViolated("cannot convert a non-finite double");
        if (d == 0.0) return ExactScalar();
        int e = 0;
        double mant = std::frexp(d, &e);
        auto scaled = static_cast<long long>(std::ldexp(mant, 53));
        return ExactScalar(mpz_class(static_cast<long>(scaled)), 0, 53 - e);
    }

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    long m() const { return m_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    // Exact value as a rational; requires b == 0.
    mpq_class to_mpq() const {
        mpq_class q(a_);
        if (m_ >= 0) {
            mpz_class d(1);
            d <<= static_cast<unsigned long>(m_);
            q /= mpq_class(d);
        } else {
            mpz_class s(1);
            s <<= static_cast<unsigned long>(-m_);
            q *= mpq_class(s);
        }
        q.canonicalize();
        return q;
    }

    // Sign of the real value; exact.  a + b*sqrt(2) vanishes only at a = b = 0.
    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sa == 0) return sb;
        if (sb == 0) return sa;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 against 2 b^2.
        mpz_class a2 = a_ * a_, b22 = 2 * b_ * b_;
        int c = cmp(a2, b22);
        if (c == 0) return 0;  // impossible for nonzero a, b; kept for safety
        return c > 0 ? sa : sb;
    }

    ExactScalar operator-() const { return ExactScalar(-a_, -b_, m_, raw_tag{}); }

    ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
        if (x.m_ == y.m_) return ExactScalar(x.a_ + y.a_, x.b_ + y.b_, x.m_);
        if (x.m_ < y.m_) return aligned_add(y, x);
        return aligned_add(x, y);
    }

    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
        return x + (-y);
    }

    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
        return ExactScalar(x.a_ * y.a_ + 2 * x.b_ * y.b_,
                           x.a_ * y.b_ + x.b_ * y.a_, x.m_ + y.m_);
    }

    ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
    ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }
    ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
    }
    friend bool operator!=(const ExactScalar& x, const ExactScalar& y) {
        return !(x == y);
    }
    friend bool operator<(const ExactScalar& x, const ExactScalar& y) {
        return (x - y).sign() < 0;
    }
    friend bool operator<=(const ExactScalar& x, const ExactScalar& y) {
        return (x - y).sign() <= 0;
    }
    friend bool operator>(const ExactScalar& x, const ExactScalar& y) { return y < x; }
    friend bool operator>=(const ExactScalar& x, const ExactScalar& y) { return y <= x; }

    double to_double() const {
        double v = a_.get_d() + b_.get_d() * 1.4142135623730950488;
        return std::ldexp(v, static_cast<int>(-m_));
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
        return os << "(" << x.a_ << "+" << x.b_ << "*sqrt2)*2^" << -x.m_;
    }

private:
    struct raw_tag {};
    // Already-canonical fast path (negation preserves canonical form).
    ExactScalar(mpz_class a, mpz_class b, long m, raw_tag)
        : a_(std::move(a)), b_(std::move(b)), m_(m) {}

    static ExactScalar aligned_add(const ExactScalar& hi, const ExactScalar& lo) {
        // hi.m_ > lo.m_: bring lo to the finer denominator 2^(-hi.m_).
        unsigned long d = static_cast<unsigned long>(hi.m_ - lo.m_);
        mpz_class la = lo.a_ << d, lb = lo.b_ << d;
        return ExactScalar(hi.a_ + la, hi.b_ + lb, hi.m_);
    }

    void canonicalize() {
        if (a_ == 0 && b_ == 0) {
            m_ = 0;
            return;
        }
        // Strip common factors of 2 so (a, b) are not both even.
        while (mpz_even_p(a_.get_mpz_t()) && mpz_even_p(b_.get_mpz_t())) {
            a_ >>= 1;
            b_ >>= 1;
            --m_;
        }
    }

    mpz_class a_, b_;
    long m_;
};

}  // namespace walshtf
