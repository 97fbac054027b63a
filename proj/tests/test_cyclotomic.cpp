#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3glue;

namespace {

IntVector ints(std::initializer_list<long> v) {
    IntVector out;
    for (long x : v) out.push_back(x);
    return out;
}

}  // namespace

TEST(Cyclotomic, EulerPhiAndPolynomials) {
    EXPECT_EQ(euler_phi(50), 20u);
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(cyclotomic_poly(1), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclotomic_poly(2), (IntPoly{1, 1}));
    EXPECT_EQ(cyclotomic_poly(50), (IntPoly{1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(50)(Integer(1)), 1);
    EXPECT_EQ(cyclotomic_poly(50)(Integer(-1)), 5);
    // X^n - 1 is the product over divisors
    for (unsigned long n = 1; n <= 60; ++n) {
        IntPoly prod = IntPoly::constant(1);
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic_poly(d);
        ASSERT_EQ(prod, IntPoly::monomial(1, n) - IntPoly::constant(1));
    }
}

TEST(Cyclotomic, TracePolynomial) {
    auto f = CycloField::make(50);
    IntPoly psi = trace_polynomial(*f);
    EXPECT_EQ(psi, (IntPoly{-1, -5, 25, 5, -50, -1, 35, 0, -10, 0, 1}));
    EXPECT_TRUE(verify_trace_polynomial(f->phi(), psi));
    EXPECT_FALSE(verify_trace_polynomial(f->phi(), psi + IntPoly{1}));
    EXPECT_EQ(psi(Integer(3)), 15005);
    EXPECT_EQ(psi(Integer(-2)), 5);
    for (unsigned long n = 3; n <= 40; ++n) {
        auto g = CycloField::make(n);
        ASSERT_TRUE(g->psi().has_value());
        ASSERT_TRUE(verify_trace_polynomial(g->phi(), *g->psi())) << n;
    }
}

TEST(Cyclotomic, TracesAndNorms) {
    auto f = CycloField::make(50);
    EXPECT_EQ(CycloElement::from_integer(f, 1).trace(), 20);
    EXPECT_EQ(CycloElement::zeta_power(f, 1).trace(), 0);   // mu(50) = 0
    EXPECT_EQ(CycloElement::zeta_power(f, 5).trace(), 5);  // zeta^5 primitive 10th root: mu(10) * 20/4
    EXPECT_EQ(CycloElement::zeta_power(f, 25).trace(), -20);
    EXPECT_EQ((CycloElement::from_integer(f, 1) - CycloElement::zeta_power(f, 1)).norm(), 1);  // Phi_50(1)
    EXPECT_EQ((CycloElement::from_integer(f, 1) - CycloElement::zeta_power(f, 2)).norm(), 5);  // Phi_25(1)
    CycloElement z = CycloElement::zeta_power(f, 7);
    EXPECT_EQ(z * z.inverse(), CycloElement::from_integer(f, 1));
    EXPECT_EQ(z.involution(), CycloElement::zeta_power(f, -7));
}

TEST(Cyclotomic, TwistElement) {
    auto f = CycloField::make(50);
    TwistElement te = build_twist_element(f);
    EXPECT_EQ(abs(te.norm_u1), 1);
    EXPECT_EQ(abs(te.norm_u2), 1);
    EXPECT_EQ(te.norm_a, 3001);
    EXPECT_EQ(te.norm_a_prime, 3001);
    EXPECT_TRUE(te.divides_3001);
    EXPECT_TRUE(te.a.is_integral());
    EXPECT_EQ(te.a.involution(), te.a);
    EXPECT_EQ(te.a.integer_poly(), IntPoly(ints({3, -3, 0, 0, -3, 0, -3, 6, -9, 12, -12, 14, -17, 17, -17, 12, -9, 9, -6, 6})));
    EXPECT_THROW(build_twist_element(CycloField::make(7)), std::invalid_argument);
}

TEST(TraceFormLattice, Untwisted) {
    auto f = CycloField::make(50);
    TraceFormLattice t = build_trace_form_lattice(f, CycloElement::from_integer(f, 1));
    EXPECT_EQ(abs(t.lattice.det()), 5);
    EXPECT_TRUE(t.lattice.is_even());
    EXPECT_EQ(t.lattice.gram().row(0), ints({0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 1, 0, -1, 0, 0, 0}));
    EXPECT_EQ(GlueGroup(t.lattice).orders(), (std::vector<Integer>{5}));
    EXPECT_EQ(t.multiplication_by_zeta.charpoly(), f->phi());
}

TEST(TraceFormLattice, Twisted) {
    auto f = CycloField::make(50);
    TwistElement te = build_twist_element(f);
    TraceFormLattice t = build_trace_form_lattice(f, te.a);
    const IntMatrix& g = t.lattice.gram();
    EXPECT_EQ(g.row(0), l2_expected_first_row());
    for (std::size_t i = 1; i < 20; ++i)
        for (std::size_t j = 1; j < 20; ++j) ASSERT_EQ(g(i, j), g(i - 1, j - 1));
    EXPECT_EQ(t.lattice.det(), 5 * Integer(3001) * 3001);
    EXPECT_EQ(t.lattice.det(), testing_support::laplace_det(g));
    EXPECT_EQ(t.lattice.signature(), (Signature{2, 18}));
    EXPECT_EQ(testing_support::ldl_signature(g), (Signature{2, 18}));
    EXPECT_TRUE(t.lattice.is_even());
}

TEST(TraceFormLattice, ExplicitFivePartVector) {
    L2Data d = build_L2();
    GlueGroup g(d.twisted.lattice);
    RatVector v = l2_five_part_witness();
    // b_a(v, zeta^j) for the power basis
    IntVector expected = ints({3, -6, 6, -9, 9, -12, 11, -11, 8, -5, 0, 5, -8, 11, -11, 12, -9, 9, -6, 6});
    for (std::size_t j = 0; j < 20; ++j) {
        RatVector e(20, Rational(0));
        e[j] = 1;
        ASSERT_EQ(d.twisted.lattice.product(v, e), Rational(expected[j])) << j;
    }
    EXPECT_EQ(d.twisted.lattice.norm(v), make_rational(-142, 5));
    EXPECT_EQ(torsion_quadratic(g, v).value, make_rational(8, 5));
    EXPECT_EQ(g.class_order(v), 5);
}

TEST(RealEmbeddings, LabelsAndSigns) {
    EXPECT_EQ(real_embedding_labels(50), (std::vector<unsigned long>{1, 3, 7, 9, 11, 13, 17, 19, 21, 23}));
    L2Data d = build_L2();
    RealSubfieldElement e = d.twist.a_real * RealSubfieldElement::from_cyclo(trace_form_scale(d.field));
    auto ev = real_embedding_signs(e, 8);
    ASSERT_EQ(ev.size(), 10u);
    const char* eight[] = {"-0.11372300", "-0.067094370", "0.028027567", "-0.026605488", "-0.11141084",
                           "-0.10565801", "-0.029497116", "-0.51853999", "-1.5061139",  "-2.5493849"};
    for (std::size_t i = 0; i < ev.size(); ++i) {
        EXPECT_EQ(ev[i].sign, ev[i].k == 7 ? 1 : -1) << ev[i].k;
        EXPECT_EQ(ev[i].value.decimal, eight[i]) << ev[i].k;
    }
}
