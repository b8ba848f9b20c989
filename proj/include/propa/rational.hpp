#pragma once

#include <gmp.h>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace propa {

// Arbitrary-precision fraction, always in lowest terms, denominator > 0.
// Canonical zero is 0/1. Every LP coefficient, solution value and invariant
// in this library is a Rational; there is no floating point anywhere.
class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(int n) : Rational(static_cast<long>(n)) {}
    Rational(long num, long den);
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    ~Rational() { mpq_clear(q_); }

    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }

    // Accepts "p/q" or a plain integer "p", with optional sign. Returns
    // nullopt on malformed input or zero denominator.
    static std::optional<Rational> parse(std::string_view text);

    // Always "p/q", including q = 1 (so zero prints as "0/1").
    std::string str() const;

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o);

    // *this += a*b and *this -= a*b without a temporary allocation per call;
    // these carry the inner loops of the simplex.
    void add_mul(const Rational& a, const Rational& b);
    void sub_mul(const Rational& a, const Rational& b);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }

    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }
    Rational reciprocal() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    static int cmp(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_); }

    double to_double() const { return mpq_get_d(q_); }

    std::string numerator_str() const;
    std::string denominator_str() const;

    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw() { return q_; }

  private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
Rational binomial(long n, long k);

// base^exp for exp >= 0, exact.
Rational pow_int(long base, long exp);

Rational sum(const std::vector<Rational>& xs);

} // namespace propa
