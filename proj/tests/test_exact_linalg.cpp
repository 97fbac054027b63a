#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3glue;
using testing_support::Gen;

TEST(Integer, ModAndFloor) {
    EXPECT_EQ(mod_nonneg(-7, 5), 3);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_THROW(inverse_mod(2, 4), std::domain_error);
    EXPECT_EQ(reduce_mod(make_rational(-142, 5), 2), make_rational(8, 5));
}

TEST(Integer, PerfectSquares) {
    EXPECT_TRUE(is_perfect_square(0));
    EXPECT_TRUE(is_perfect_square(25));
    EXPECT_FALSE(is_perfect_square(-25));
    EXPECT_FALSE(is_perfect_square(5));
    EXPECT_TRUE(is_perfect_square(pow_int(2, 24)));
}

TEST(Integer, StrictParsing) {
    EXPECT_EQ(parse_integer("-3001"), -3001);
    EXPECT_THROW(parse_integer("3.0"), std::invalid_argument);
    EXPECT_THROW(parse_integer(" 1"), std::invalid_argument);
    EXPECT_THROW(parse_integer(""), std::invalid_argument);
    EXPECT_EQ(parse_rational("-142/5"), make_rational(-142, 5));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Factor, SmallAndLarge) {
    auto f = factorize(5 * Integer(3001) * 3001);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].first, 5);
    EXPECT_EQ(f[1].first, 3001);
    EXPECT_EQ(f[1].second, 2u);
    // product of two primes above the trial-division bound
    Integer p("1000003"), q("1000033");
    auto g = factorize(p * q);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].first, p);
    EXPECT_EQ(g[1].first, q);
}

TEST(Determinant, KnownValues) {
    EXPECT_EQ(det(IntMatrix{{6002, 3001}, {3001, -6002}}), -5 * Integer(3001) * 3001);
    EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(det(IntMatrix{{1, 1}, {1, 1}}), 0);
}

TEST(Determinant, AgreesWithCofactorExpansion) {
    Gen gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = static_cast<std::size_t>(gen.range(1, 6));
        IntMatrix m = gen.matrix(n, n, 9);
        ASSERT_EQ(det(m), testing_support::laplace_det(m));
    }
}

TEST(Charpoly, CayleyHamiltonAndTrace) {
    Gen gen(12);
    for (int trial = 0; trial < 1000; ++trial) {
        auto n = static_cast<std::size_t>(gen.range(1, 5));
        IntMatrix m = gen.matrix(n, n, 6);
        IntPoly p = charpoly(m);
        ASSERT_EQ(p.degree(), static_cast<long>(n));
        ASSERT_EQ(p.lead(), 1);
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        ASSERT_EQ(p.coeff(n - 1), -tr);
        Integer d = det(m);
        ASSERT_EQ(p.coeff(0), n % 2 == 0 ? d : Integer(-d));
        ASSERT_TRUE(evaluate(p, m).is_zero());
    }
}

TEST(Charpoly, CompanionMatrix) {
    IntPoly phi = cyclotomic_poly(50);
    EXPECT_EQ(charpoly(companion_matrix(phi)), phi);
}

TEST(SmithNormalForm, Invariants) {
    Gen gen(13);
    for (int trial = 0; trial < 1000; ++trial) {
        auto r = static_cast<std::size_t>(gen.range(1, 5));
        auto c = static_cast<std::size_t>(gen.range(1, 5));
        IntMatrix m = gen.matrix(r, c, 12);
        SnfResult s = smith_normal_form(m);
        ASSERT_EQ(s.U * m * s.V, s.D);
        ASSERT_EQ(abs(det(s.U)), 1);
        ASSERT_EQ(abs(det(s.V)), 1);
        auto d = s.diagonal();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) {
                    ASSERT_EQ(s.D(i, j), 0);
                }
        for (std::size_t i = 0; i < d.size(); ++i) {
            ASSERT_GE(d[i], 0);
            if (i + 1 < d.size() && d[i] != 0) {
                ASSERT_EQ(d[i + 1] % d[i], 0);
            }
            if (d[i] == 0 && i + 1 < d.size()) {
                ASSERT_EQ(d[i + 1], 0);
            }
        }
        if (r == c) {
            Integer prod = 1;
            for (const auto& x : d) prod *= x;
            ASSERT_EQ(prod, abs(det(m)));
        }
    }
}

TEST(SmithNormalForm, InvariantUnderUnimodularChange) {
    Gen gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = static_cast<std::size_t>(gen.range(2, 4));
        IntMatrix m = gen.matrix(n, n, 8);
        IntMatrix changed = gen.unimodular(n, 6) * m * gen.unimodular(n, 6);
        ASSERT_EQ(smith_normal_form(m).diagonal(), smith_normal_form(changed).diagonal());
    }
}

TEST(HermiteNormalForm, Invariants) {
    Gen gen(15);
    for (int trial = 0; trial < 1000; ++trial) {
        auto r = static_cast<std::size_t>(gen.range(1, 5));
        auto c = static_cast<std::size_t>(gen.range(1, 5));
        IntMatrix m = gen.matrix(r, c, 12);
        HnfResult h = hermite_normal_form(m);
        ASSERT_EQ(h.U * m, h.H);
        ASSERT_EQ(abs(det(h.U)), 1);
        std::size_t last_pivot = 0;
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t p = c;
            for (std::size_t j = 0; j < c; ++j)
                if (h.H(i, j) != 0) {
                    p = j;
                    break;
                }
            if (i >= h.rank) {
                ASSERT_EQ(p, c);
                continue;
            }
            ASSERT_LT(p, c);
            if (i > 0) {
                ASSERT_GT(p, last_pivot);
            }
            last_pivot = p;
            ASSERT_GT(h.H(i, p), 0);
            for (std::size_t k = 0; k < i; ++k) {
                ASSERT_GE(h.H(k, p), 0);
                ASSERT_LT(h.H(k, p), h.H(i, p));
            }
        }
        // canonical: a unimodular change of rows gives the same form
        ASSERT_EQ(hermite_normal_form(gen.unimodular(r, 5) * m).H, h.H);
    }
}

TEST(Kernel, IsSaturatedAndCorrect) {
    Gen gen(16);
    for (int trial = 0; trial < 300; ++trial) {
        auto r = static_cast<std::size_t>(gen.range(1, 3));
        auto c = static_cast<std::size_t>(gen.range(2, 5));
        IntMatrix b = gen.matrix(r, c, 7);
        IntMatrix k = integer_kernel(b);
        ASSERT_EQ(k.cols(), c - rank(b));
        if (k.cols() == 0) continue;
        ASSERT_TRUE((b * k).is_zero());
        for (const auto& d : smith_normal_form(k).diagonal()) ASSERT_EQ(d, 1);
    }
}

TEST(Inverse, RoundTrip) {
    Gen gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = static_cast<std::size_t>(gen.range(1, 5));
        IntMatrix m = gen.matrix(n, n, 5);
        if (det(m) == 0) {
            EXPECT_THROW(inverse(m), SingularMatrix);
            continue;
        }
        ASSERT_EQ(to_rational(m) * inverse(m), RatMatrix::identity(n));
    }
}

TEST(Signature, KnownForms) {
    EXPECT_EQ(signature_symmetric(IntMatrix{{0, 1}, {1, 0}}), (Signature{1, 1}));
    EXPECT_EQ(signature_symmetric(IntMatrix{{6002, 3001}, {3001, -6002}}), (Signature{1, 1}));
    EXPECT_EQ(signature_symmetric(IntMatrix{{2, 0}, {0, 3}}), (Signature{2, 0}));
    EXPECT_THROW(signature_symmetric(IntMatrix{{1, 1}, {1, 1}}), std::domain_error);
    EXPECT_THROW(signature_symmetric(IntMatrix{{1, 2}, {0, 1}}), std::invalid_argument);
}

TEST(Signature, AgreesWithLdlOracle) {
    Gen gen(18);
    for (int trial = 0; trial < 1000; ++trial) {
        auto n = static_cast<std::size_t>(gen.range(1, 6));
        IntMatrix g = gen.nonsingular_symmetric(n, 5);
        Signature s = signature_symmetric(g);
        ASSERT_EQ(s, testing_support::ldl_signature(g)) << to_string(g);
        ASSERT_EQ(static_cast<std::size_t>(s.positive + s.negative), n);
        // Sylvester's law of inertia
        IntMatrix u = gen.unimodular(n, 6);
        ASSERT_EQ(signature_symmetric(u.transpose() * g * u), s);
    }
}
