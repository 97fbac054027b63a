#pragma once

// Exact real-root machinery: Sturm sequences, root isolation into rational
// intervals, refinement, sign determination and decimal rounding.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"
#include "k3glue/polynomial.hpp"

namespace k3glue {

class NotSquarefree : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A real root located in the half-open interval (lo, hi]; lo == hi marks an
/// exactly known rational root.
struct RootInterval {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

class SturmSequence {
  public:
    explicit SturmSequence(const RatPoly& p) {
        if (p.is_zero()) throw std::domain_error("Sturm sequence of zero polynomial");
        seq_.push_back(p);
        if (p.degree() <= 0) return;
        seq_.push_back(p.derivative());
        while (seq_.back().degree() > 0) {
            RatPoly r = seq_[seq_.size() - 2] % seq_.back();
            if (r.is_zero()) break;
            seq_.push_back(-r);
        }
    }

    /// Sign changes of the sequence at x, zeros skipped.
    int variations(const Rational& x) const {
        int changes = 0;
        int last = 0;
        for (const auto& s : seq_) {
            int sg = sign_of(s(x));
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++changes;
            last = sg;
        }
        return changes;
    }

    int variations_at_infinity(bool positive) const {
        int changes = 0;
        int last = 0;
        for (const auto& s : seq_) {
            int sg = sign_of(s.lead());
            if (!positive && s.degree() % 2 == 1) sg = -sg;
            if (last != 0 && sg != last) ++changes;
            last = sg;
        }
        return changes;
    }

    /// Distinct roots in (a, b] of a square-free polynomial.
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    int count_above(const Rational& a) const { return variations(a) - variations_at_infinity(true); }
    int count_total() const { return variations_at_infinity(false) - variations_at_infinity(true); }

    const RatPoly& poly() const { return seq_.front(); }

  private:
    std::vector<RatPoly> seq_;
};

/// Strict upper bound on |root| (Cauchy).
inline Rational root_bound(const RatPoly& p) {
    Rational m = 0;
    const Rational& lead = p.lead();
    for (long k = 0; k < p.degree(); ++k) {
        Rational q = abs(p.coeffs()[static_cast<std::size_t>(k)] / lead);
        if (q > m) m = q;
    }
    return m + 1;
}

namespace detail {

inline void isolate(const SturmSequence& s, const Rational& a, const Rational& b, int n,
                    std::vector<RootInterval>& out) {
    if (n == 0) return;
    if (n == 1) {
        if (s.poly()(b) == 0)
            out.push_back({b, b});
        else
            out.push_back({a, b});
        return;
    }
    Rational m = (a + b) / 2;
    int left = s.count(a, m);
    isolate(s, a, m, left, out);
    isolate(s, m, b, n - left, out);
}

}  // namespace detail

/// One interval per distinct real root, ascending. Requires p square-free.
inline std::vector<RootInterval> real_root_isolation(const IntPoly& p) {
    if (p.is_zero()) throw std::domain_error("root isolation of zero polynomial");
    if (!is_squarefree(p)) throw NotSquarefree("real_root_isolation requires a square-free polynomial");
    std::vector<RootInterval> out;
    if (p.degree() <= 0) return out;
    RatPoly f = to_rational(p);
    SturmSequence s(f);
    Rational m = root_bound(f);
    detail::isolate(s, -m, m, s.count(-m, m), out);
    return out;
}

/// Bisects until the interval is narrower than `width` (or exact).
inline RootInterval refine(const IntPoly& p, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    RatPoly f = to_rational(p);
    SturmSequence s(f);
    while (iv.width() >= width) {
        Rational m = iv.midpoint();
        if (f(m) == 0) return {m, m};
        if (s.count(iv.lo, m) == 1)
            iv.hi = m;
        else
            iv.lo = m;
    }
    return iv;
}

inline RootInterval refine_once(const SturmSequence& s, RootInterval iv) {
    if (iv.exact()) return iv;
    Rational m = iv.midpoint();
    if (s.poly()(m) == 0) return {m, m};
    if (s.count(iv.lo, m) == 1)
        iv.hi = m;
    else
        iv.lo = m;
    return iv;
}

/// Exact enclosure of r over the closed interval [lo, hi] by interval Horner.
inline std::pair<Rational, Rational> value_bounds(const RatPoly& r, const RootInterval& iv) {
    if (iv.exact()) {
        Rational v = r(iv.lo);
        return {v, v};
    }
    Rational lo = 0, hi = 0;
    const auto& c = r.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        Rational p1 = lo * iv.lo, p2 = lo * iv.hi, p3 = hi * iv.lo, p4 = hi * iv.hi;
        Rational mn = std::min({p1, p2, p3, p4});
        Rational mx = std::max({p1, p2, p3, p4});
        lo = mn + c[k];
        hi = mx + c[k];
    }
    return {lo, hi};
}

/// Sign of r at the root of p isolated by iv. Throws if r vanishes there.
inline int sign_at_root(const RatPoly& r, const IntPoly& p, RootInterval iv) {
    if (iv.exact()) {
        int sg = sign_of(r(iv.lo));
        if (sg == 0) throw std::domain_error("value vanishes at the root");
        return sg;
    }
    if (r.is_zero()) throw std::domain_error("value vanishes at the root");
    RatPoly g = gcd(to_rational(p), r);
    if (g.degree() > 0) {
        SturmSequence sg(g);
        if (sg.count(iv.lo, iv.hi) > 0) throw std::domain_error("value vanishes at the root");
    }
    SturmSequence s(to_rational(p));
    for (;;) {
        auto [lo, hi] = value_bounds(r, iv);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        iv = refine_once(s, iv);
        if (iv.exact()) return sign_of(r(iv.lo));
    }
}

/// Rounds x half-up to `digits` significant digits, fixed-point notation.
inline std::string to_significant(const Rational& x, int digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    if (x == 0) return "0";
    bool negative = x < 0;
    Rational a = abs(x);
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    auto pow10 = [](long k) -> Rational {
        if (k >= 0) return Rational(pow_int(10, static_cast<unsigned long>(k)));
        return Rational(1) / Rational(pow_int(10, static_cast<unsigned long>(-k)));
    };
    while (pow10(e) > a) --e;
    while (pow10(e + 1) <= a) ++e;
    Rational scaled = a * pow10(digits - 1 - e);
    Integer n = floor_of(scaled + Rational(1, 2));
    if (n == pow_int(10, static_cast<unsigned long>(digits))) {
        n /= 10;
        ++e;
    }
    std::string s = n.get_str();
    std::string out;
    long point = e + 1;  // digits before the decimal point
    if (point <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-point), '0') + s;
    } else if (point >= static_cast<long>(s.size())) {
        out = s + std::string(static_cast<std::size_t>(point - static_cast<long>(s.size())), '0');
    } else {
        out = s.substr(0, static_cast<std::size_t>(point)) + "." + s.substr(static_cast<std::size_t>(point));
    }
    return negative ? "-" + out : out;
}

struct Approximation {
    std::string decimal;  // rounded to `digits` significant digits
    Rational lower;       // exact enclosure of the true value
    Rational upper;
    int digits = 0;
};

/// Decimal value of r at the root of p isolated by iv, correct to `digits`
/// significant digits: refines until both ends of the enclosure round alike.
inline Approximation approximate_at_root(const RatPoly& r, const IntPoly& p, RootInterval iv, int digits) {
    SturmSequence s(to_rational(p));
    for (int iter = 0; iter < 4000; ++iter) {
        auto [lo, hi] = value_bounds(r, iv);
        if ((lo > 0 || hi < 0 || (lo == hi)) && to_significant(lo, digits) == to_significant(hi, digits))
            return {to_significant(lo, digits), lo, hi, digits};
        iv = refine_once(s, iv);
    }
    throw std::runtime_error("approximation did not converge");
}

}  // namespace k3glue
