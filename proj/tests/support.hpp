#pragma once

// Random generators and slow independent oracles used only by the tests.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "k3glue/k3glue.hpp"

namespace testing_support {

using namespace k3glue;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }

    IntMatrix matrix(std::size_t r, std::size_t c, long bound) {
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = range(-bound, bound);
        return m;
    }

    IntMatrix symmetric(std::size_t n, long bound, bool even = false) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Integer v = range(-bound, bound);
                if (i == j && even) v *= 2;
                m(i, j) = v;
                m(j, i) = v;
            }
        return m;
    }

    IntMatrix nonsingular_symmetric(std::size_t n, long bound, bool even = false) {
        for (;;) {
            IntMatrix m = symmetric(n, bound, even);
            if (det(m) != 0) return m;
        }
    }

    /// Product of random elementary matrices: unimodular.
    IntMatrix unimodular(std::size_t n, int steps) {
        IntMatrix u = IntMatrix::identity(n);
        for (int s = 0; s < steps; ++s) {
            auto i = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
            auto j = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
            if (i == j) {
                if (coin()) u.negate_row(i);
                continue;
            }
            u.add_row_multiple(i, j, Integer(range(-2, 2)));
        }
        return u;
    }

    IntPoly poly(long degree, long bound) {
        std::vector<Integer> c;
        for (long k = 0; k <= degree; ++k) c.push_back(range(-bound, bound));
        if (c.back() == 0) c.back() = 1;
        return IntPoly(c);
    }

  private:
    std::mt19937_64 rng_;
};

/// Determinant by cofactor expansion along the first row, memoized on the
/// remaining column set. Exponential but exact; fine up to ~20 columns.
inline Integer laplace_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    std::map<std::uint64_t, Integer> memo;
    auto rec = [&](auto&& self, std::size_t row, std::uint64_t cols) -> Integer {
        if (row == n) return 1;
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        Integer total = 0;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(cols & (std::uint64_t{1} << c))) continue;
            if (m(row, c) != 0) total += sign * m(row, c) * self(self, row + 1, cols & ~(std::uint64_t{1} << c));
            sign = -sign;
        }
        memo.emplace(cols, total);
        return total;
    };
    return rec(rec, 0, (std::uint64_t{1} << n) - 1);
}

/// Res(f, g) as the determinant of the Sylvester matrix.
inline Integer sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    const auto m = static_cast<std::size_t>(f.degree()), n = static_cast<std::size_t>(g.degree());
    const std::size_t s = m + n;
    if (s == 0) return 1;
    IntMatrix syl(s, s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) syl(i, i + k) = f.coeff(m - k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) syl(n + i, i + k) = g.coeff(n - k);
    return det(syl);
}

/// Signature by symmetric Gaussian elimination over Q (LDL^T with 2x2
/// rotations to clear zero pivots); an independent path from the Sturm one.
inline Signature ldl_signature(const IntMatrix& g) {
    RatMatrix a = to_rational(g);
    std::size_t n = a.rows();
    Signature s{0, 0};
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // all remaining diagonal entries vanish: combine e_i + e_j
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;  // degenerate
            // replace basis vector i by e_i + e_j
            for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            piv = pi;
        }
        Rational d = a(piv, piv);
        (d > 0 ? s.positive : s.negative)++;
        done[piv] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, piv) == 0) continue;
            Rational f = a(i, piv) / d;
            for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(piv, k);
            for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, piv);
        }
    }
    return s;
}

}  // namespace testing_support
