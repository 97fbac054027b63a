#pragma once

// Arbitrary-precision scalars and the handful of number-theoretic helpers
// shared by every other header.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace k3glue {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer abs_value(const Integer& a) { return abs(a); }

inline int sign_of(const Integer& a) { return sgn(a); }
inline int sign_of(const Rational& a) { return sgn(a); }

/// Floor division; the remainder a - q*b has the sign of b.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Representative of a modulo |m| in [0, |m|).
inline Integer mod_nonneg(const Integer& a, const Integer& m) {
    Integer r;
    Integer am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& base, unsigned long e) {
    Rational r = 1;
    Rational b = base;
    while (e > 0) {
        if (e & 1UL) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    Integer am = mod_nonneg(a, m);
    if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("element not invertible modulo " + m.get_str());
    return r;
}

inline Integer isqrt(const Integer& a) {
    if (a < 0) throw std::domain_error("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Zero counts as a perfect square; negatives never do.
inline bool is_perfect_square(const Integer& a) {
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Canonical representative of q modulo m in [0, m).
inline Rational reduce_mod(const Rational& q, const Integer& m) {
    Rational scaled = q / Rational(m);
    Rational r = q - Rational(floor_of(scaled) * m);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Strict decimal parse: optional leading '-', then at least one digit.
inline Integer parse_integer(std::string_view text) {
    std::size_t i = 0;
    if (!text.empty() && text[0] == '-') i = 1;
    if (i == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return Integer(std::string(text), 10);
}

/// Accepts "p" or "p/q" with q > 0.
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-')
        throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return make_rational(num, den);
}

}  // namespace k3glue
