#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"

namespace k3glue {

/// Dense univariate polynomial, coefficients in ascending degree.
/// Trailing zeros are trimmed so the leading coefficient is nonzero unless
/// the polynomial is zero.
template <class T>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }
    static Polynomial monomial(const T& a, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = a;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(T(1), 1); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const T& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const std::vector<T>& coeffs() const { return c_; }

    T operator()(const T& x) const {
        T acc = 0;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(static_cast<long>(k)) * c_[k];
        return Polynomial(std::move(d));
    }

    /// this(q(X))
    Polynomial compose(const Polynomial& q) const {
        Polynomial acc;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * q + constant(c_[k]);
        return acc;
    }

    /// this(-X)
    Polynomial negate_variable() const {
        std::vector<T> c = c_;
        for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
        return Polynomial(std::move(c));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a) {
        std::vector<T> c = a.c_;
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const T& s, const Polynomial& a) {
        std::vector<T> c = a.c_;
        for (auto& v : c) v *= s;
        return Polynomial(std::move(c));
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(T(1));
        Polynomial b = *this;
        while (e > 0) {
            if (e & 1U) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Human-readable form in the given variable, highest degree first.
    std::string to_string(const std::string& var = "X") const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const T& a = c_[k];
            if (a == 0) continue;
            bool negative = a < 0;
            T mag = negative ? T(-a) : a;
            if (s.empty()) {
                if (negative) s += "-";
            } else {
                s += negative ? " - " : " + ";
            }
            bool unit = (mag == 1);
            if (!unit || k == 0) s += k3glue::to_string(mag);
            if (k >= 1) {
                if (!unit) s += "*";
                s += var;
                if (k >= 2) s += "^" + std::to_string(k);
            }
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.emplace_back(a);
    return RatPoly(std::move(c));
}

inline Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& a : p.coeffs()) g = gcd_of(g, a);
    return g;
}

/// Primitive integer polynomial with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Integer> c;
    for (const auto& a : p.coeffs()) c.emplace_back(a / g);
    return IntPoly(std::move(c));
}

/// Scales a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient (same roots).
inline IntPoly primitive_part(const RatPoly& p) {
    Integer den = 1;
    for (const auto& a : p.coeffs()) den = lcm_of(den, a.get_den());
    std::vector<Integer> c;
    for (const auto& a : p.coeffs()) {
        Rational s = a * Rational(den);
        c.emplace_back(s.get_num());
    }
    return primitive_part(IntPoly(std::move(c)));
}

/// Quotient and remainder over a field.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    long db = b.degree();
    long da = a.degree();
    if (da < db) return {RatPoly{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(da - db + 1), Rational(0));
    const Rational& lb = b.lead();
    for (long k = da; k >= db; --k) {
        Rational f = r[static_cast<std::size_t>(k)] / lb;
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (long j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

inline RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

/// Exact quotient in Z[X]; throws if b does not divide a.
inline IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rational(a), to_rational(b));
    if (!r.is_zero()) throw std::domain_error("polynomial does not divide exactly");
    std::vector<Integer> c;
    for (const auto& v : q.coeffs()) {
        if (v.get_den() != 1) throw std::domain_error("polynomial quotient is not integral");
        c.emplace_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[X].
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
    long db = b.degree();
    std::vector<Integer> r = a.coeffs();
    long dr = a.degree();
    if (dr < db) return a;
    long e = dr - db + 1;
    const Integer& lb = b.lead();
    while (dr >= db) {
        Integer lr = r[static_cast<std::size_t>(dr)];
        for (auto& v : r) v *= lb;
        for (long j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(dr - db + j)] -= lr * b.coeffs()[static_cast<std::size_t>(j)];
        --e;
        IntPoly tmp(r);
        r = tmp.coeffs();
        dr = tmp.degree();
    }
    Integer scale = pow_int(lb, static_cast<unsigned long>(e));
    for (auto& v : r) v *= scale;
    return IntPoly(std::move(r));
}

/// Monic gcd over Q (zero if both inputs are zero).
inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rational l = a.lead();
    return (Rational(1) / l) * a;
}

/// Extended gcd over Q: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<RatPoly, RatPoly, RatPoly> extended_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RatPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        RatPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = Rational(1) / r0.lead();
    return {inv * r0, inv * s0, inv * t0};
}

/// Res(f, g) = lc(f)^deg(g) * prod g(roots of f), by the subresultant PRS.
inline Integer resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant of a zero polynomial");
    IntPoly a = f, b = g;
    Integer s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() * b.degree()) % 2 == 1) s = -s;
    }
    if (b.degree() == 0) return s * pow_int(b.lead(), static_cast<unsigned long>(a.degree()));

    Integer ca = content(a), cb = content(b);
    Integer t = pow_int(ca, static_cast<unsigned long>(b.degree())) * pow_int(cb, static_cast<unsigned long>(a.degree()));
    {
        std::vector<Integer> x, y;
        for (const auto& v : a.coeffs()) x.emplace_back(v / ca);
        for (const auto& v : b.coeffs()) y.emplace_back(v / cb);
        a = IntPoly(std::move(x));
        b = IntPoly(std::move(y));
    }
    Integer gg = 1, h = 1;
    for (;;) {
        long delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = b;
        Integer divisor = gg * pow_int(h, static_cast<unsigned long>(delta));
        std::vector<Integer> c;
        for (const auto& v : r.coeffs()) {
            Integer qv;
            mpz_divexact(qv.get_mpz_t(), v.get_mpz_t(), divisor.get_mpz_t());
            c.push_back(qv);
        }
        b = IntPoly(std::move(c));
        gg = a.lead();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            Integer num = pow_int(gg, static_cast<unsigned long>(delta));
            Integer den = pow_int(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.is_zero()) return 0;
        if (b.degree() == 0) break;
    }
    long da = a.degree();
    Integer num = pow_int(b.lead(), static_cast<unsigned long>(da));
    Integer den = pow_int(h, static_cast<unsigned long>(da - 1));
    Integer hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return s * t * hh;
}

/// Yun's square-free decomposition over Q: p = c * prod f_i^i with each f_i
/// square-free, primitive, pairwise coprime. Returns (f_i, i) for nonconstant f_i.
inline std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& p) {
    if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
    std::vector<std::pair<IntPoly, unsigned>> out;
    RatPoly f = to_rational(p);
    if (f.degree() <= 0) return out;
    RatPoly df = f.derivative();
    RatPoly a0 = gcd(f, df);
    RatPoly b = divmod(f, a0).first;
    RatPoly c = divmod(df, a0).first;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        RatPoly a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(primitive_part(a), i);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 0) return true;
    RatPoly f = to_rational(p);
    return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, carried as IntPoly with coefficients in [0, p).

namespace modp {

inline IntPoly reduce(const IntPoly& f, const Integer& p) {
    std::vector<Integer> c;
    for (const auto& a : f.coeffs()) c.push_back(mod_nonneg(a, p));
    return IntPoly(std::move(c));
}

inline IntPoly make_monic(const IntPoly& f, const Integer& p) {
    if (f.is_zero()) return f;
    Integer inv = inverse_mod(f.lead(), p);
    std::vector<Integer> c;
    for (const auto& a : f.coeffs()) c.push_back(mod_nonneg(a * inv, p));
    return IntPoly(std::move(c));
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b, const Integer& p) { return reduce(a * b, p); }

inline std::pair<IntPoly, IntPoly> divmod(const IntPoly& a0, const IntPoly& b0, const Integer& p) {
    IntPoly a = reduce(a0, p), b = reduce(b0, p);
    if (b.is_zero()) throw std::domain_error("division by zero polynomial over F_p");
    std::vector<Integer> r = a.coeffs();
    long db = b.degree(), da = a.degree();
    if (da < db) return {IntPoly{}, a};
    Integer inv = inverse_mod(b.lead(), p);
    std::vector<Integer> q(static_cast<std::size_t>(da - db + 1), Integer(0));
    for (long k = da; k >= db; --k) {
        Integer f = mod_nonneg(r[static_cast<std::size_t>(k)] * inv, p);
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (long j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(k - db + j)];
            slot = mod_nonneg(slot - f * b.coeffs()[static_cast<std::size_t>(j)], p);
        }
    }
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

/// Monic gcd over F_p.
inline IntPoly gcd(IntPoly a, IntPoly b, const Integer& p) {
    a = reduce(a, p);
    b = reduce(b, p);
    while (!b.is_zero()) {
        IntPoly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

inline bool is_separable(const IntPoly& f, const Integer& p) {
    IntPoly g = gcd(f, reduce(f.derivative(), p), p);
    return g.degree() == 0;
}

/// All roots in [0, p), ascending, by exhaustive evaluation (small p only).
inline std::vector<Integer> roots(const IntPoly& f, const Integer& p) {
    if (p > 100000000) throw std::domain_error("root enumeration modulus too large");
    IntPoly g = reduce(f, p);
    std::vector<Integer> out;
    for (Integer x = 0; x < p; ++x)
        if (mod_nonneg(g(x), p) == 0) out.push_back(x);
    return out;
}

}  // namespace modp

}  // namespace k3glue
