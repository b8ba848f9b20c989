#include "propa/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace propa {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_init(q_);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpq_set_si(q_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(q_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

namespace {
// One scratch value per thread; solve() instances may run concurrently.
mpq_ptr scratch() {
    thread_local struct Scratch {
        mpq_t q;
        Scratch() { mpq_init(q); }
        ~Scratch() { mpq_clear(q); }
    } s;
    return s.q;
}
} // namespace

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    mpq_ptr t = scratch();
    mpq_mul(t, a.q_, b.q_);
    mpq_add(q_, q_, t);
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    mpq_ptr t = scratch();
    mpq_mul(t, a.q_, b.q_);
    mpq_sub(q_, q_, t);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    text = text.substr(begin, end - begin);
    if (text.empty()) return std::nullopt;

    auto valid_integer = [](std::string_view s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };

    std::string num, den = "1";
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer(text)) return std::nullopt;
        num = std::string(text);
    } else {
        auto n = text.substr(0, slash);
        auto d = text.substr(slash + 1);
        if (!valid_integer(n) || !valid_integer(d)) return std::nullopt;
        num = std::string(n);
        den = std::string(d);
    }

    Rational r;
    mpz_t zn, zd;
    mpz_init(zn);
    mpz_init(zd);
    int okn = mpz_set_str(zn, num.c_str(), 10);
    int okd = mpz_set_str(zd, den.c_str(), 10);
    bool ok = okn == 0 && okd == 0 && mpz_sgn(zd) != 0;
    if (ok) {
        if (mpz_sgn(zd) < 0) {
            mpz_neg(zn, zn);
            mpz_neg(zd, zd);
        }
        mpq_set_num(r.q_, zn);
        mpq_set_den(r.q_, zd);
        mpq_canonicalize(r.q_);
    }
    mpz_clear(zn);
    mpz_clear(zd);
    if (!ok) return std::nullopt;
    return r;
}

std::string Rational::str() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    if (out.find('/') == std::string::npos) out += "/1";
    return out;
}

std::string Rational::numerator_str() const {
    std::string s = str();
    return s.substr(0, s.find('/'));
}

std::string Rational::denominator_str() const {
    std::string s = str();
    return s.substr(s.find('/') + 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Rational r;
    mpz_t z;
    mpz_init(z);
    mpz_bin_uiui(z, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    mpq_set_z(r.raw(), z);
    mpz_clear(z);
    return r;
}

Rational pow_int(long base, long exp) {
    if (exp < 0) throw std::domain_error("pow_int: negative exponent");
    Rational r;
    mpz_t z;
    mpz_init(z);
    mpz_set_si(z, base);
    mpz_pow_ui(z, z, static_cast<unsigned long>(exp));
    mpq_set_z(r.raw(), z);
    mpz_clear(z);
    return r;
}

Rational sum(const std::vector<Rational>& xs) {
    Rational acc;
    for (const auto& x : xs) acc += x;
    return acc;
}

} // namespace propa
