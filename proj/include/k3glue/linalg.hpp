#pragma once

// Exact linear algebra over Z and Q: determinants, characteristic
// polynomials, Smith and Hermite normal forms, rational solves, integer
// kernels and the signature of a symmetric form.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/polynomial.hpp"
#include "k3glue/real_roots.hpp"

namespace k3glue {

class SingularMatrix : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

inline void require_square(const IntMatrix& m, const char* what) {
    if (!m.is_square()) throw DimensionError(std::string(what) + " requires a square matrix");
}

/// Bareiss fraction-free elimination.
inline Integer det(const IntMatrix& m) {
    require_square(m, "det");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Characteristic polynomial det(X*I - M) by Faddeev-LeVerrier over Z; the
/// division by k at each step is exact.
inline IntPoly charpoly(const IntMatrix& m) {
    require_square(m, "charpoly");
    const std::size_t n = m.rows();
    std::vector<Integer> c(n + 1, Integer(0));
    c[n] = 1;
    IntMatrix mk(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        IntMatrix am = m * mk;
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        Integer q;
        Integer kk = static_cast<unsigned long>(k);
        mpz_divexact(q.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
        c[n - k] = -q;
    }
    return IntPoly(std::move(c));
}

/// p(M) for a square matrix M.
inline IntMatrix evaluate(const IntPoly& p, const IntMatrix& m) {
    require_square(m, "polynomial evaluation");
    const std::size_t n = m.rows();
    IntMatrix acc(n, n);
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeffs()[k];
    }
    return acc;
}

/// Companion matrix acting on column vectors: e_j -> e_{j+1}, e_{d-1} -> -sum c_i e_i.
inline IntMatrix companion_matrix(const IntPoly& monic) {
    if (monic.degree() < 1 || monic.lead() != 1) throw std::invalid_argument("companion matrix needs a monic polynomial");
    const auto d = static_cast<std::size_t>(monic.degree());
    IntMatrix c(d, d);
    for (std::size_t j = 0; j + 1 < d; ++j) c(j + 1, j) = 1;
    for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -monic.coeffs()[i];
    return c;
}

struct SnfResult {
    IntMatrix U;  // m x m unimodular
    IntMatrix D;  // m x n diagonal
    IntMatrix V;  // n x n unimodular

    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

/// U * M * V = D with d_1 | d_2 | ... nonnegative and zeros last.
inline SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    const std::size_t r = std::min(rows, cols);
    for (std::size_t t = 0; t < r; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) return {std::move(u), std::move(a), std::move(v)};
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);  // truncating
                a.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                a.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

struct HnfResult {
    IntMatrix H;  // row Hermite form, zero rows last
    IntMatrix U;  // unimodular, H = U * M
    std::size_t rank = 0;
};

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot).
inline HnfResult hermite_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = row; i < rows; ++i)
                if (h(i, col) != 0 && (best == rows || abs(h(i, col)) < abs(h(best, col)))) best = i;
            if (best == rows) break;
            h.swap_rows(row, best);
            u.swap_rows(row, best);
            bool done = true;
            for (std::size_t i = row + 1; i < rows; ++i) {
                if (h(i, col) == 0) continue;
                Integer q = floor_div(h(i, col), h(row, col));
                h.add_row_multiple(i, row, -q);
                u.add_row_multiple(i, row, -q);
                if (h(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) {
            h.negate_row(row);
            u.negate_row(row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q = floor_div(h(i, col), h(row, col));
            h.add_row_multiple(i, row, -q);
            u.add_row_multiple(i, row, -q);
        }
        ++row;
    }
    return {std::move(h), std::move(u), row};
}

/// Inverse over Q by Gauss-Jordan.
inline RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw DimensionError("inverse requires a square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw SingularMatrix("matrix is singular");
        a.swap_rows(k, piv);
        inv.swap_rows(k, piv);
        Rational p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline RatMatrix inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

/// Exact x with A x = b; A must be square and invertible over Q.
inline RatVector solve_rational(const IntMatrix& a, const RatVector& b) {
    if (!a.is_square() || a.rows() != b.size()) throw DimensionError("solve_rational shape mismatch");
    return inverse(a) * b;
}

/// Rank over Q.
inline std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

/// Columns form a basis of {y in Z^n : B y = 0}; the result is saturated.
inline IntMatrix integer_kernel(const IntMatrix& b) {
    HnfResult r = hermite_normal_form(b.transpose());
    const std::size_t n = b.cols();
    IntMatrix k(n, n - r.rank);
    for (std::size_t i = r.rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(j, i - r.rank) = r.U(i, j);
    // canonical basis: HNF of the kernel rows
    HnfResult canon = hermite_normal_form(k.transpose());
    IntMatrix out(n, canon.rank);
    for (std::size_t i = 0; i < canon.rank; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = canon.H(i, j);
    return out;
}

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
    return "(" + std::to_string(s.positive) + ", " + std::to_string(s.negative) + ")";
}

/// Eigenvalue sign count of a nondegenerate symmetric matrix: square-free
/// decomposition of the characteristic polynomial, Sturm counts per factor.
inline Signature signature_symmetric(const IntMatrix& g) {
    if (!g.is_symmetric()) throw std::invalid_argument("signature requires a symmetric matrix");
    if (det(g) == 0) throw SingularMatrix("signature requires a nondegenerate matrix");
    IntPoly f = charpoly(g);
    Signature s;
    for (const auto& [factor, mult] : squarefree_decomposition(f)) {
        SturmSequence seq(to_rational(factor));
        auto pos = static_cast<std::size_t>(seq.count_above(Rational(0)));
        auto total = static_cast<std::size_t>(factor.degree());
        s.positive += mult * pos;
        s.negative += mult * (total - pos);
    }
    return s;
}

}  // namespace k3glue
