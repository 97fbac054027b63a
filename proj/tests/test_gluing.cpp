#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3glue;
using testing_support::Gen;

namespace {

struct Sides {
    Isometry t1 = build_L1();
    L2Data l2 = build_L2();
    GlueSide s1{t1};
    GlueSide s2{l2.twisted.multiplication_by_zeta};
};

const Sides& sides() {
    static const Sides s;
    return s;
}

GlueMap with_part(GlueMap m, const PrimeGlue& replacement) {
    for (auto& p : m.parts)
        if (p.prime == replacement.prime) p = replacement;
    return m;
}

}  // namespace

TEST(GlueMap, FivePartScalars) {
    const Sides& s = sides();
    GlueMap gamma = find_glue_map(s.s1, s.s2);
    ASSERT_EQ(gamma.parts.size(), 2u);
    EXPECT_EQ(gamma.part(Integer(5)).method, "cyclic");
    EXPECT_EQ(gamma.part(Integer(3001)).method, "eigenline");
    // In terms of the explicit generators v1 (of L1) and v2 (of L(a)), the map
    // v1 -> c v2 is an anti-isometry exactly for c = +-1 (mod 5).
    TorsionValue q1 = torsion_quadratic(s.s1.group, l1_five_part_witness());
    EXPECT_EQ(q1.value, make_rational(2, 5));
    for (long c = 1; c < 5; ++c) {
        RatVector w = l2_five_part_witness();
        for (auto& x : w) x *= c;
        TorsionValue q2 = torsion_quadratic(s.s2.group, w);
        EXPECT_EQ(q2 == q1.negated(), c == 1 || c == 4) << c;
    }
    // the chosen scalar is the smallest admissible one in the component basis
    const SylowComponent& c1 = s.s1.component(Integer(5));
    const SylowComponent& c2 = s.s2.component(Integer(5));
    Integer chosen = gamma.part(Integer(5)).matrix(0, 0);
    for (Integer c = 1; c < chosen; ++c)
        EXPECT_NE(torsion_quadratic(s.s2.group, component_element(c2, {c})),
                  torsion_quadratic(s.s1.group, component_element(c1, {Integer(1)})).negated());
}

TEST(GlueMap, IsDeterministicAndValid) {
    const Sides& s = sides();
    GlueMap a = find_glue_map(s.s1, s.s2);
    GlueMap b = find_glue_map(GlueSide(s.t1), GlueSide(s.l2.twisted.multiplication_by_zeta));
    ASSERT_EQ(a.parts.size(), b.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i) EXPECT_EQ(a.parts[i].matrix, b.parts[i].matrix);
    GlueMapCheck chk = check_glue_map(s.s1, s.s2, a);
    EXPECT_TRUE(chk.isomorphism);
    EXPECT_TRUE(chk.anti_isometry);
    EXPECT_TRUE(chk.equivariant);
}

TEST(GlueMap, SelfGluingFivePartNeedsSquareRootOfMinusOne) {
    // q1 + c^2 q1 = 0 in Q/2Z with q1 = 2/5 means c^2 = -1 (mod 5): c = 2, 3.
    const Sides& s = sides();
    RatVector v = l1_five_part_witness();
    TorsionValue q = torsion_quadratic(s.s1.group, v);
    for (long c = 1; c < 5; ++c) {
        RatVector w = v;
        for (auto& x : w) x *= c;
        EXPECT_EQ(torsion_quadratic(s.s1.group, w) == q.negated(), c == 2 || c == 3) << c;
    }
}

TEST(GlueMap, FormMismatch) {
    // A2 has q = 2/3 on Z/3; gluing it to itself needs c^2 = -1 (mod 3).
    Lattice a2(IntMatrix{{2, -1}, {-1, 2}});
    Isometry id(a2, IntMatrix::identity(2));
    try {
        find_glue_map(GlueSide(id), GlueSide(id));
        FAIL() << "expected NoGlueMap";
    } catch (const NoGlueMap& e) {
        EXPECT_EQ(e.obstruction(), GlueObstruction::FormMismatch);
        EXPECT_EQ(e.prime(), 3);
    }
    // against A2(-1) the identity scalar works
    Lattice a2m(IntMatrix{{-2, 1}, {1, -2}});
    GlueMap g = find_glue_map(GlueSide(id), GlueSide(Isometry(a2m, IntMatrix::identity(2))));
    EXPECT_EQ(g.part(Integer(3)).method, "cyclic");
}

TEST(GlueMap, EquivarianceObstruction) {
    // <6> against <-6>: the forms match, but id and -id differ on Z/6.
    Lattice a(IntMatrix{{6}});
    Lattice b(IntMatrix{{-6}});
    Isometry ta(a, IntMatrix{{1}});
    Isometry tb(b, IntMatrix{{-1}});
    EXPECT_NO_THROW(find_glue_map(GlueSide(ta), GlueSide(Isometry(b, IntMatrix{{1}}))));
    try {
        find_glue_map(GlueSide(ta), GlueSide(tb));
        FAIL() << "expected NoGlueMap";
    } catch (const NoGlueMap& e) {
        EXPECT_EQ(e.obstruction(), GlueObstruction::Equivariance);
    }
}

TEST(GlueMap, StructureMismatch) {
    Isometry a(Lattice(IntMatrix{{6}}), IntMatrix{{1}});
    Isometry b(Lattice(IntMatrix{{-10}}), IntMatrix{{1}});
    EXPECT_THROW(find_glue_map(GlueSide(a), GlueSide(b)), NoGlueMap);
}

TEST(GlueMap, ExhaustiveSearchFallback) {
    // (Z/2)^2 parts are handled by the search: D4-type forms
    Lattice a(IntMatrix{{2, 0}, {0, 2}});
    Lattice b(IntMatrix{{-2, 0}, {0, -2}});
    Isometry ta(a, IntMatrix{{0, 1}, {1, 0}});
    Isometry tb(b, IntMatrix{{0, 1}, {1, 0}});
    GlueMap g = find_glue_map(GlueSide(ta), GlueSide(tb));
    EXPECT_EQ(g.part(Integer(2)).method, "search");
    GluingResult r = glue(GlueSide(ta), GlueSide(tb), g);
    EXPECT_TRUE(r.ambient.is_unimodular());
    EXPECT_TRUE(r.ambient.is_even());
    Isometry t = extend_isometry(r, ta, tb);
    EXPECT_EQ(t.charpoly(), ta.charpoly() * tb.charpoly());
}

TEST(Glue, ConstructionPairInvariants) {
    const Sides& s = sides();
    GlueMap gamma = find_glue_map(s.s1, s.s2);
    GluingResult r = glue(s.s1, s.s2, gamma);
    EXPECT_EQ(r.ambient.rank(), 22u);
    EXPECT_TRUE(r.ambient.is_even());
    EXPECT_EQ(abs(r.ambient.det()), 1);
    EXPECT_EQ(r.ambient.signature(), (Signature{3, 19}));
    EXPECT_EQ(r.index, 5 * Integer(3001) * 3001);
    EXPECT_EQ(r.index * r.index * abs(r.ambient.det()), abs(s.t1.lattice().det() * s.l2.twisted.lattice.det()));
    // embeddings are isometric, primitive and mutually orthogonal
    EXPECT_EQ(r.embed1.transpose() * r.ambient.gram() * r.embed1, s.t1.lattice().gram());
    EXPECT_EQ(r.embed2.transpose() * r.ambient.gram() * r.embed2, s.l2.twisted.lattice.gram());
    EXPECT_TRUE((r.embed1.transpose() * r.ambient.gram() * r.embed2).is_zero());
    EXPECT_TRUE(is_primitive(r.ambient, r.embed1).primitive);
    EXPECT_TRUE(is_primitive(r.ambient, r.embed2).primitive);
    EXPECT_TRUE(same_span(orthogonal_complement(r.ambient, r.embed1).basis, r.embed2));

    Isometry t = extend_isometry(r, s.t1, s.l2.twisted.multiplication_by_zeta);
    EXPECT_EQ(t.charpoly(), (IntPoly{1, -3, 1}) * cyclotomic_poly(50));
    EXPECT_EQ(t.matrix() * r.embed1, r.embed1 * s.t1.matrix());
    EXPECT_EQ(t.matrix() * r.embed2, r.embed2 * s.l2.twisted.multiplication_by_zeta.matrix());
}

TEST(Glue, TrivialGluingIsDirectSum) {
    Lattice h(IntMatrix{{0, 1}, {1, 0}});
    Isometry id(h, IntMatrix::identity(2));
    GlueSide s(id);
    GluingResult r = glue(s, s, find_glue_map(s, s));
    EXPECT_EQ(r.index, 1);
    EXPECT_EQ(r.ambient.rank(), 4u);
    EXPECT_EQ(abs(r.ambient.det()), 1);
    EXPECT_EQ(r.ambient.signature(), (Signature{2, 2}));
    EXPECT_EQ(extend_isometry(r, id, id).matrix(), IntMatrix::identity(4));
}

TEST(Glue, RandomCyclicDiagonalLattices) {
    // <2k> + <-2k> glues along Z/2k whenever an anti-isometric scalar exists.
    Gen gen(41);
    int glued = 0;
    for (int trial = 0; trial < 60; ++trial) {
        long k = gen.range(1, 30);
        Lattice a(IntMatrix{{Integer(2 * k)}});
        Lattice b(IntMatrix{{Integer(-2 * k)}});
        Isometry ta(a, IntMatrix{{gen.coin() ? 1 : -1}});
        Isometry tb(b, IntMatrix{{ta.matrix()(0, 0)}});
        GlueSide sa(ta), sb(tb);
        GlueMap g = find_glue_map(sa, sb);
        GluingResult r = glue(sa, sb, g);
        ASSERT_TRUE(r.ambient.is_even());
        ASSERT_EQ(abs(r.ambient.det()), 1);
        ASSERT_EQ(r.index * r.index, Integer(4 * k * k));
        ASSERT_EQ(r.ambient.signature(), (Signature{1, 1}));
        ASSERT_TRUE(is_primitive(r.ambient, r.embed1).primitive);
        Isometry t = extend_isometry(r, ta, tb);
        ASSERT_EQ(t.charpoly(), ta.charpoly() * tb.charpoly());
        ++glued;
    }
    EXPECT_EQ(glued, 60);
}

TEST(Mutation, CorruptedFiveScalarFailsOnlyTheFormCheck) {
    const Sides& s = sides();
    GlueMap gamma = find_glue_map(s.s1, s.s2);
    PrimeGlue bad = gamma.part(Integer(5));
    // a unit scalar that is not a solution of c^2 q2 = -q1
    for (Integer c = 1; c < 5; ++c) {
        PrimeGlue cand = bad;
        cand.matrix(0, 0) = c;
        if (!check_prime_glue(s.s1, s.s2, cand).anti_isometry) {
            bad = cand;
            break;
        }
    }
    GlueMapCheck chk = check_glue_map(s.s1, s.s2, with_part(gamma, bad));
    EXPECT_TRUE(chk.isomorphism);
    EXPECT_FALSE(chk.anti_isometry);
    EXPECT_TRUE(chk.equivariant);
    EXPECT_THROW(glue(s.s1, s.s2, with_part(gamma, bad)), GluingError);
}

TEST(Mutation, SwappedEigenlinesGiveNonIntegralExtension) {
    const Sides& s = sides();
    GlueMap gamma = find_glue_map(s.s1, s.s2);
    const Integer p = 3001;
    // Post-compose gamma with the automorphism of G(L(a))_3001 exchanging the
    // two eigenlines: the form is preserved, equivariance is not.
    const auto& a2 = s.s2.action.part(p);
    auto eig = modp::roots(*a2.charpoly_mod_p, p);
    ASSERT_EQ(eig.size(), 2u);
    IntVector f1 = detail::eigenvector2(a2.matrix, eig[0], p);
    IntVector f2 = detail::eigenvector2(a2.matrix, eig[1], p);
    const SylowComponent& c2 = s.s2.component(p);
    Integer k = Rational(torsion_bilinear(s.s2.group, component_element(c2, f1), component_element(c2, f2)).value *
                         Rational(p))
                    .get_num();
    // swap sigma: f1 -> f2, f2 -> f1 preserves b(f1, f2) and q(fi) = 0 (isotropic eigenlines)
    IntMatrix f(2, 2), swapped(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        f(i, 0) = f1[i];
        f(i, 1) = f2[i];
        swapped(i, 0) = f2[i];
        swapped(i, 1) = f1[i];
    }
    ASSERT_NE(mod_nonneg(k, p), 0);
    Integer d = mod_nonneg(det(f), p), dinv = inverse_mod(d, p);
    IntMatrix finv{{mod_nonneg(f(1, 1) * dinv, p), mod_nonneg(-f(0, 1) * dinv, p)},
                   {mod_nonneg(-f(1, 0) * dinv, p), mod_nonneg(f(0, 0) * dinv, p)}};
    IntMatrix sigma = swapped * finv;
    PrimeGlue g = gamma.part(p);
    g.matrix = sigma * g.matrix;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g.matrix(i, j) = mod_nonneg(g.matrix(i, j), p);
    GlueMap mutated = with_part(gamma, g);
    GlueMapCheck chk = check_glue_map(s.s1, s.s2, mutated);
    EXPECT_TRUE(chk.isomorphism);
    EXPECT_TRUE(chk.anti_isometry);
    EXPECT_FALSE(chk.equivariant);
    GluingResult r = glue(s.s1, s.s2, mutated);  // still an even unimodular overlattice
    EXPECT_TRUE(r.ambient.is_unimodular());
    EXPECT_THROW(extend_isometry(r, s.t1, s.l2.twisted.multiplication_by_zeta), NonIntegralExtension);
}
