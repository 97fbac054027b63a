#pragma once

// The K3 construction: the rank-2 lattice L1 with its Salem isometry, the
// twisted cyclotomic lattice L2 = L(a), their gluing, and a certification
// report that re-checks every lattice-side claim exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/cyclotomic.hpp"
#include "k3glue/gluing.hpp"
#include "k3glue/integer.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/linalg.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/polynomial.hpp"

namespace k3glue {

struct Witness {
    std::string name;
    std::string value;
};

struct CheckEntry {
    std::string id;
    std::string claim;
    std::vector<Witness> witnesses;
    bool passed = false;
};

struct CertificationReport {
    std::vector<CheckEntry> checks;
    int digits = 5;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }

    const CheckEntry* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }

    std::vector<std::string> failed_ids() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.passed) out.push_back(c.id);
        return out;
    }
};

/// The Salem polynomial X^2 - 3X + 1 of the rank-2 isometry.
inline IntPoly salem_quadratic() { return IntPoly{1, -3, 1}; }

/// L1: Gram 3001 * [[2, 1], [1, -2]] with t1 = [[1, 1], [1, 2]].
inline Isometry build_L1() {
    Lattice l(IntMatrix{{6002, 3001}, {3001, -6002}});
    return Isometry(l, IntMatrix{{1, 1}, {1, 2}});
}

/// Generator of the 5-part of G(L1).
inline RatVector l1_five_part_witness() { return {make_rational(2, 5), make_rational(1, 5)}; }

struct L2Data {
    CycloFieldPtr field;
    TwistElement twist;
    TraceFormLattice untwisted;
    TraceFormLattice twisted;
};

/// L2 = (Z[zeta_50], b_a) with multiplication by zeta.
inline L2Data build_L2() {
    CycloFieldPtr field = CycloField::make(50);
    TwistElement te = build_twist_element(field);
    TraceFormLattice plain = build_trace_form_lattice(field, CycloElement::from_integer(field, 1));
    TraceFormLattice tw = build_trace_form_lattice(field, te.a);
    return {field, std::move(te), std::move(plain), std::move(tw)};
}

/// Generator of the 5-part of G(L2), in the power basis of Z[zeta_50].
inline RatVector l2_five_part_witness() {
    const long num[20] = {2, 3, 2, 3, 2, 1, -1, 1, -1, 1, 1, -1, 1, -1, 1, -3, -2, -3, -2, -3};
    RatVector v;
    for (long c : num) v.push_back(make_rational(c, 5));
    return v;
}

/// Expected first row of the Gram matrix of L2.
inline IntVector l2_expected_first_row() {
    return {-10, 8, -6, 3, -1, -2, 3, -3, 3, -3, 3, -3, 3, -3, 3, -3, 3, -3, 3, -3};
}

/// (X + 121)(X - 124) reduced mod 3001.
inline IntPoly expected_3001_charpoly() { return modp::reduce(IntPoly{121, 1} * IntPoly{-124, 1}, Integer(3001)); }

struct K3Assembly {
    Isometry t1;
    L2Data l2;
    GlueMap gamma;
    GluingResult glued;
    Isometry t;
};

inline K3Assembly assemble_k3() {
    Isometry t1 = build_L1();
    L2Data l2 = build_L2();
    GlueSide s1(t1), s2(l2.twisted.multiplication_by_zeta);
    GlueMap gamma = find_glue_map(s1, s2);
    GluingResult glued = glue(s1, s2, gamma);
    Isometry t = extend_isometry(glued, t1, l2.twisted.multiplication_by_zeta);
    glued.extended_isometry = t;
    return {std::move(t1), std::move(l2), std::move(gamma), std::move(glued), std::move(t)};
}

/// Restriction of an isometry to the sublattice spanned by the columns of k
/// (which it must preserve): the matrix m with t k = k m.
inline std::optional<IntMatrix> restrict_isometry(const IntMatrix& t, const IntMatrix& k) {
    RatMatrix kr = to_rational(k);
    RatMatrix kt = kr.transpose();
    RatMatrix m = inverse(kt * kr) * kt * to_rational(t) * kr;
    if (!is_integral(m)) return std::nullopt;
    IntMatrix mi = to_integer(m);
    if (t * k != k * mi) return std::nullopt;
    return mi;
}

/// The symmetric perturbation G[i][j] += delta, G[j][i] += delta.
inline IntMatrix mutate_gram(const IntMatrix& g, std::size_t i, std::size_t j, const Integer& delta) {
    IntMatrix m = g;
    m(i, j) += delta;
    if (i != j) m(j, i) += delta;
    return m;
}

namespace detail {

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline std::string join_integers(const std::vector<Integer>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return "(" + s + ")";
}

inline std::string sylow_structure(const std::vector<SylowComponent>& comps) {
    std::string s;
    for (const auto& c : comps) {
        for (const auto& o : c.orders) s += (s.empty() ? "" : " + ") + std::string("Z/") + o.get_str();
    }
    return s.empty() ? "0" : s;
}

class ReportBuilder {
  public:
    void add(std::string id, std::string claim, std::vector<Witness> w, bool ok) {
        report.checks.push_back({std::move(id), std::move(claim), std::move(w), ok});
    }
    CertificationReport report;
};

}  // namespace detail

/// The even/unimodular/rank/signature block for a candidate K3 Gram matrix.
inline std::vector<CheckEntry> k3_lattice_checks(const IntMatrix& gram) {
    std::vector<CheckEntry> out;
    out.push_back({"k3.rank", "glued lattice has rank 22", {{"rank", std::to_string(gram.rows())}}, gram.rows() == 22});
    if (!gram.is_square() || !gram.is_symmetric()) {
        out.push_back({"k3.symmetric", "Gram matrix is symmetric", {}, false});
        return out;
    }
    bool even = true;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0) even = false;
    out.push_back({"k3.even", "glued lattice is even", {{"even", detail::yes_no(even)}}, even});
    Integer d = det(gram);
    out.push_back({"k3.unimodular", "glued lattice is unimodular", {{"det", d.get_str()}}, abs(d) == 1});
    std::string sig = "degenerate";
    bool sig_ok = false;
    if (d != 0) {
        Signature s = signature_symmetric(gram);
        sig = to_string(s);
        sig_ok = s == Signature{3, 19};
    }
    out.push_back({"k3.signature", "glued lattice has signature (3,19)", {{"signature", sig}}, sig_ok});
    return out;
}

/// Runs the whole construction and checks each claim; failures become report
/// entries rather than exceptions.
inline CertificationReport certify(int digits = 5) {
    detail::ReportBuilder rb;
    rb.report.digits = digits;
    using detail::yes_no;

    // L1
    Isometry t1 = build_L1();
    const Lattice& l1 = t1.lattice();
    GlueGroup g1(l1);
    auto comps1 = sylow_decomposition(g1);
    GlueAction act1 = induced_glue_action(t1, g1);
    rb.add("L1.gram", "L1 has Gram matrix 3001*[[2,1],[1,-2]]", {{"gram", to_string(l1.gram())}},
           l1.gram() == IntMatrix{{6002, 3001}, {3001, -6002}});
    rb.add("L1.invariants", "L1 is even of signature (1,1) and determinant -5*3001^2",
           {{"even", yes_no(l1.is_even())}, {"signature", to_string(l1.signature())}, {"det", l1.det().get_str()}},
           l1.is_even() && l1.signature() == Signature{1, 1} && l1.det() == -5 * Integer(3001) * 3001);
    rb.add("L1.glue_group", "G(L1) = Z/5 + (Z/3001)^2",
           {{"orders", detail::join_integers(g1.orders())}, {"sylow", detail::sylow_structure(comps1)}},
           g1.order() == 5 * Integer(3001) * 3001 && detail::sylow_structure(comps1) == "Z/5 + Z/3001 + Z/3001");
    {
        RatVector v = l1_five_part_witness();
        TorsionValue q = torsion_quadratic(g1, v);
        Integer ord = g1.class_order(v);
        rb.add("L1.q_value", "v = (2/5, 1/5) generates G(L1)_5 with q(v) = 2/5 in Q/2Z",
               {{"q", q.to_string()}, {"order", ord.get_str()}}, q.value == make_rational(2, 5) && ord == 5);
    }
    rb.add("L1.isometry_charpoly", "t1 = [[1,1],[1,2]] is an isometry with charpoly X^2-3X+1",
           {{"charpoly", t1.charpoly().to_string()}}, t1.charpoly() == salem_quadratic());
    rb.add("L1.action_5", "t1 acts as -id on G(L1)_5", {{"matrix", to_string(act1.part(Integer(5)).matrix)}},
           act1.is_minus_identity(Integer(5)));
    {
        const auto& p = act1.part(Integer(3001));
        bool ok = p.charpoly_mod_p && *p.charpoly_mod_p == expected_3001_charpoly();
        rb.add("L1.action_3001", "t1 on G(L1)_3001 has charpoly (X+121)(X-124) over F_3001",
               {{"charpoly", p.charpoly_mod_p ? p.charpoly_mod_p->to_string() : "none"}}, ok);
    }
    {
        // norm(x) = sum g_ii x_i^2 + 2 sum_{i<j} g_ij x_i x_j
        Integer gcd_norms = 0;
        for (std::size_t i = 0; i < l1.rank(); ++i) {
            gcd_norms = gcd_of(gcd_norms, l1.gram()(i, i));
            for (std::size_t j = i + 1; j < l1.rank(); ++j) gcd_norms = gcd_of(gcd_norms, 2 * l1.gram()(i, j));
        }
        Integer attained = abs(l1.gram()(0, 0));
        rb.add("L1.no_minus_two", "every norm in L1 is divisible by 6002, so L1 has no (-2)-vectors",
               {{"norm_gcd", gcd_norms.get_str()}, {"min_abs_norm", attained.get_str()}},
               gcd_norms == 6002 && attained == 6002);
    }

    // The twisting element a and the trace-form lattices
    std::optional<L2Data> l2;
    try {
        l2 = build_L2();
    } catch (const std::exception& e) {
        rb.add("a.construction", "the twisting element and L(a) can be built", {{"error", e.what()}}, false);
        return rb.report;
    }
    const TwistElement& te = l2->twist;
    const CycloFieldPtr& field = l2->field;
    {
        IntPoly psi = *field->psi();
        Integer p3 = psi(Integer(3)), pm2 = psi(Integer(-2));
        rb.add("psi.identity", "Phi_50(X) = X^10 Psi_50(X + 1/X)",
               {{"psi", psi.to_string("Y")}}, verify_trace_polynomial(field->phi(), psi));
        rb.add("psi.ratio", "Psi_50(3) / Psi_50(-2) = 3001",
               {{"psi(3)", p3.get_str()}, {"psi(-2)", pm2.get_str()}}, pm2 * 3001 == p3);
    }
    {
        Integer res = resultant(field->phi(), salem_quadratic());
        rb.add("a.feasible_prime", "3001 divides Res(Phi_50, X^2-3X+1)", {{"resultant", res.get_str()}},
               res % 3001 == 0);
    }
    rb.add("a.units", "u1 and u2 are units", {{"N(u1)", to_string(te.norm_u1)}, {"N(u2)", to_string(te.norm_u2)}},
           abs(te.norm_u1) == 1 && abs(te.norm_u2) == 1);
    rb.add("a.element", "a = u1 u2 a' is an integral element of the real subfield",
           {{"a", te.a.to_string()}, {"integral", yes_no(te.a.is_integral())}},
           te.a.is_integral() && te.a.involution() == te.a);
    rb.add("a.norm", "N(a) = 3001 and a divides 3001",
           {{"N(a)", to_string(te.norm_a)}, {"N(a')", to_string(te.norm_a_prime)}, {"divides", yes_no(te.divides_3001)}},
           te.norm_a == 3001 && te.divides_3001);
    {
        const Lattice& u = l2->untwisted.lattice;
        rb.add("trace_form.det", "the untwisted trace-form lattice has |det| = |Phi_50(1) Phi_50(-1)| = 5",
               {{"det", u.det().get_str()}, {"even", yes_no(u.is_even())}},
               abs(u.det()) == abs(field->phi()(Integer(1)) * field->phi()(Integer(-1))) && abs(u.det()) == 5 &&
                   u.is_even());
    }

    // L2 = L(a)
    const Isometry& t2 = l2->twisted.multiplication_by_zeta;
    const Lattice& lt = l2->twisted.lattice;
    GlueGroup g2(lt);
    auto comps2 = sylow_decomposition(g2);
    GlueAction act2 = induced_glue_action(t2, g2);
    {
        // twisting by A(zeta) with A = a's power-basis polynomial reproduces L(a)
        Lattice via_twist = twist(l2->untwisted.multiplication_by_zeta, te.a.integer_poly());
        rb.add("L2.twist_law", "L(a) has Gram A(t)^T G and det(L(a)) = det(A(t)) det(L)",
               {{"det", via_twist.det().get_str()}},
               via_twist == lt &&
                   lt.det() == det(evaluate(te.a.integer_poly(), l2->untwisted.multiplication_by_zeta.matrix())) *
                                   l2->untwisted.lattice.det());
    }
    rb.add("L2.even_signature", "L(a) is even of signature (2,18)",
           {{"even", yes_no(lt.is_even())}, {"signature", to_string(lt.signature())}},
           lt.is_even() && lt.signature() == Signature{2, 18});
    {
        bool toeplitz = true;
        for (std::size_t i = 1; i < lt.rank(); ++i)
            for (std::size_t j = 1; j < lt.rank(); ++j)
                if (lt.gram()(i, j) != lt.gram()(i - 1, j - 1)) toeplitz = false;
        rb.add("L2.gram_row", "the first Gram row of L(a) is (-10, 8, -6, 3, -1, -2, 3, -3, ...) and the Gram is Toeplitz",
               {{"row", to_string(lt.gram().row(0))}, {"toeplitz", yes_no(toeplitz)}},
               lt.gram().row(0) == l2_expected_first_row() && toeplitz);
    }
    rb.add("L2.det", "|det L(a)| = 5 * 3001^2", {{"det", lt.det().get_str()}}, abs(lt.det()) == 5 * Integer(3001) * 3001);
    rb.add("L2.glue_group", "G(L(a)) = Z/5 + (Z/3001)^2",
           {{"orders", detail::join_integers(g2.orders())}, {"sylow", detail::sylow_structure(comps2)}},
           detail::sylow_structure(comps2) == "Z/5 + Z/3001 + Z/3001");
    {
        RatVector v = l2_five_part_witness();
        Rational raw = lt.norm(v);
        TorsionValue q = torsion_quadratic(g2, v);
        Integer ord = g2.class_order(v);
        rb.add("L2.q_value", "the explicit v has b_a(v,v) = -142/5, so q(v) = -2/5 in Q/2Z, and generates G(L(a))_5",
               {{"b(v,v)", to_string(raw)}, {"q", q.to_string()}, {"order", ord.get_str()}},
               raw == make_rational(-142, 5) && q.value == make_rational(8, 5) && ord == 5);
    }
    rb.add("L2.action_5", "multiplication by zeta acts as -id on G(L(a))_5",
           {{"matrix", to_string(act2.part(Integer(5)).matrix)}}, act2.is_minus_identity(Integer(5)));
    {
        const auto& p = act2.part(Integer(3001));
        bool ok = p.charpoly_mod_p && *p.charpoly_mod_p == expected_3001_charpoly();
        rb.add("L2.action_3001", "zeta on G(L(a))_3001 has charpoly (X+121)(X-124) over F_3001",
               {{"charpoly", p.charpoly_mod_p ? p.charpoly_mod_p->to_string() : "none"}}, ok);
    }
    rb.add("L2.isometry_charpoly", "multiplication by zeta has charpoly Phi_50",
           {{"charpoly", t2.charpoly().to_string()}}, t2.charpoly() == field->phi());
    {
        RealSubfieldElement e = te.a_real * RealSubfieldElement::from_cyclo(trace_form_scale(field));
        std::vector<EmbeddingValue> ev = real_embedding_signs(e, digits);
        std::vector<Witness> w;
        int positives = 0;
        bool only_seven = true;
        for (const auto& x : ev) {
            w.push_back({"k=" + std::to_string(x.k), x.value.decimal});
            if (x.sign > 0) {
                ++positives;
                if (x.k != 7) only_seven = false;
            }
        }
        w.push_back({"digits", std::to_string(digits)});
        rb.add("L2.table1", "a / Psi'(zeta + 1/zeta) is positive at exactly one real embedding, zeta -> zeta^7", w,
               positives == 1 && only_seven && ev.size() == 10);
    }

    // Gluing
    std::optional<K3Assembly> k3;
    try {
        k3 = assemble_k3();
    } catch (const std::exception& e) {
        rb.add("glue.construction", "L1 and L(a) glue equivariantly", {{"error", e.what()}}, false);
        return rb.report;
    }
    {
        std::vector<Witness> w;
        for (const auto& p : k3->gamma.parts) w.push_back({"gamma_" + p.prime.get_str(), p.method + " " + to_string(p.matrix)});
        GlueMapCheck chk = check_glue_map(GlueSide(k3->t1), GlueSide(k3->l2.twisted.multiplication_by_zeta), k3->gamma);
        rb.add("glue.map", "an equivariant anti-isometry G(L1) -> G(L(a)) exists", w, chk.valid());
    }
    for (auto& c : k3_lattice_checks(k3->glued.ambient.gram())) rb.report.checks.push_back(std::move(c));
    rb.add("glue.index", "[L : L1 + L(a)] = 5 * 3001^2", {{"index", k3->glued.index.get_str()}},
           k3->glued.index == 5 * Integer(3001) * 3001);
    IntPoly f = k3->t.charpoly();
    rb.add("k3.charpoly", "the extended isometry has charpoly (X^2-3X+1) Phi_50(X)", {{"charpoly", f.to_string()}},
           f == salem_quadratic() * field->phi());
    {
        const IntMatrix& tm = k3->t.matrix();
        bool r1 = tm * k3->glued.embed1 == k3->glued.embed1 * k3->t1.matrix();
        bool r2 = tm * k3->glued.embed2 == k3->glued.embed2 * t2.matrix();
        rb.add("k3.restrictions", "t restricts to t1 on L1 and to zeta on L(a)",
               {{"on_L1", yes_no(r1)}, {"on_L2", yes_no(r2)}}, r1 && r2);
    }
    {
        PrimitivityResult p1 = is_primitive(k3->glued.ambient, k3->glued.embed1);
        PrimitivityResult p2 = is_primitive(k3->glued.ambient, k3->glued.embed2);
        rb.add("k3.primitive", "L1 and L(a) embed primitively", {{"L1", yes_no(p1.primitive)}, {"L2", yes_no(p2.primitive)}},
               p1.primitive && p2.primitive);
    }
    {
        std::vector<Witness> w;
        bool ok = false;
        try {
            Sublattice comp = orthogonal_complement(k3->glued.ambient, k3->glued.embed1);
            std::optional<IntMatrix> m = restrict_isometry(k3->t.matrix(), comp.basis);
            w.push_back({"rank", std::to_string(comp.basis.cols())});
            w.push_back({"signature", to_string(comp.lattice.signature())});
            w.push_back({"equals_L2", yes_no(same_span(comp.basis, k3->glued.embed2))});
            if (m) w.push_back({"charpoly", charpoly(*m).to_string()});
            ok = m && comp.basis.cols() == 20 && comp.lattice.signature() == Signature{2, 18} &&
                 same_span(comp.basis, k3->glued.embed2) && charpoly(*m) == field->phi();
        } catch (const std::exception& e) {
            w.push_back({"error", e.what()});
        }
        rb.add("k3.complement", "L1^perp has rank 20, signature (2,18), and t restricted to it has charpoly Phi_50", w, ok);
    }
    {
        SquareCondition sc = square_condition(f);
        rb.add("k3.square_conditions", "|F(1)| = 1, |F(-1)| = 25 and (-1)^11 F(1) F(-1) = 25 are squares",
               {{"F(1)", sc.f_at_1.get_str()},
                {"F(-1)", sc.f_at_minus_1.get_str()},
                {"(-1)^11 F(1)F(-1)", sc.signed_product.get_str()}},
               sc.holds() && abs(sc.f_at_1) == 1 && abs(sc.f_at_minus_1) == 25 && sc.signed_product == 25);
    }
    return rb.report;
}

}  // namespace k3glue
