#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"

namespace k3glue {

inline bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

namespace detail {

/// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
inline Integer pollard_brent(const Integer& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        const Integer cc = c;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto step = [&](const Integer& v) { return mod_nonneg(v * v + cc, n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    q = mod_nonneg(q * abs(x - y), n);
                }
                g = gcd_of(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd_of(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), ascending primes with exponents:
/// trial division up to 10^6, then Pollard-Brent on the cofactor.
inline std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
    if (n == 0) throw std::domain_error("factorization of zero");
    Integer m = abs(n);
    std::map<Integer, unsigned> out;
    for (unsigned long p = 2; p <= 1000000UL; p += (p == 2 ? 1 : 2)) {
        Integer pp = p;
        if (pp * pp > m) break;
        while (m % pp == 0) {
            ++out[pp];
            m /= pp;
        }
    }
    if (m > 1) detail::factor_into(m, out);
    return {out.begin(), out.end()};
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> ps;
    for (const auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

}  // namespace k3glue
