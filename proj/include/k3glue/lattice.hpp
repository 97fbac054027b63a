#pragma once

// Integral lattices given by Gram matrices, their isometries, discriminant
// (glue) groups with torsion forms, twists and sublattice operations.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/factor.hpp"
#include "k3glue/integer.hpp"
#include "k3glue/linalg.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/polynomial.hpp"

namespace k3glue {

class LatticeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class IsometryError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A nondegenerate symmetric integral bilinear form on Z^n.
class Lattice {
  public:
    explicit Lattice(IntMatrix gram) : gram_(std::move(gram)) {
        if (!gram_.is_square()) throw LatticeError("Gram matrix is not square");
        if (!gram_.is_symmetric()) throw LatticeError("Gram matrix is not symmetric");
        det_ = k3glue::det(gram_);
        if (det_ == 0) throw LatticeError("Gram matrix is singular");
    }

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    const Integer& det() const { return det_; }

    bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_(i, i) % 2 != 0) return false;
        return true;
    }
    bool is_unimodular() const { return abs(det_) == 1; }
    Signature signature() const { return signature_symmetric(gram_); }

    Rational product(const RatVector& x, const RatVector& y) const { return bilinear(gram_, x, y); }
    Rational norm(const RatVector& x) const { return bilinear(gram_, x, x); }

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

  private:
    IntMatrix gram_;
    Integer det_;
};

inline Lattice make_lattice(IntMatrix gram) { return Lattice(std::move(gram)); }

struct LatticeInvariants {
    bool even = false;
    bool unimodular = false;
    Integer det;
    Signature signature;
};

inline LatticeInvariants lattice_invariants(const Lattice& l) {
    return {l.is_even(), l.is_unimodular(), l.det(), l.signature()};
}

/// An automorphism M of a lattice: M^T G M = G.
class Isometry {
  public:
    Isometry(Lattice lattice, IntMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != lattice_.rank() || matrix_.cols() != lattice_.rank())
            throw IsometryError("isometry matrix has the wrong size");
        if (matrix_.transpose() * lattice_.gram() * matrix_ != lattice_.gram())
            throw IsometryError("matrix does not preserve the bilinear form");
        if (abs(k3glue::det(matrix_)) != 1) throw IsometryError("matrix is not invertible over Z");
    }

    const Lattice& lattice() const { return lattice_; }
    const IntMatrix& matrix() const { return matrix_; }
    IntPoly charpoly() const { return k3glue::charpoly(matrix_); }

  private:
    Lattice lattice_;
    IntMatrix matrix_;
};

inline Isometry check_isometry(const Lattice& l, const IntMatrix& m) { return Isometry(l, m); }

/// Value of a torsion form: a rational reduced into [0, modulus), where the
/// modulus is 1 (bilinear form) or 2 (quadratic form).
struct TorsionValue {
    Rational value;
    Integer modulus = 1;

    static TorsionValue bilinear(const Rational& raw) { return {reduce_mod(raw, 1), 1}; }
    static TorsionValue quadratic(const Rational& raw) { return {reduce_mod(raw, 2), 2}; }

    TorsionValue negated() const { return {reduce_mod(-value, modulus), modulus}; }
    bool is_zero() const { return value == 0; }
    std::string to_string() const { return k3glue::to_string(value); }

    friend bool operator==(const TorsionValue&, const TorsionValue&) = default;
};

/// Reduce rational coordinates modulo the lattice Z^n, into [0, 1)^n.
inline RatVector reduce_mod_lattice(const RatVector& x) {
    RatVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = reduce_mod(x[i], 1);
    return r;
}

/// The discriminant group L^dual / L, presented as a product of cyclic groups
/// Z/d_i (elementary divisors > 1 of the Gram matrix) with canonical lifts.
class GlueGroup {
  public:
    explicit GlueGroup(const Lattice& l) : lattice_(l) {
        SnfResult snf = smith_normal_form(l.gram());
        IntMatrix vinv = to_integer(inverse(snf.V));
        const std::size_t n = l.rank();
        for (std::size_t i = 0; i < n; ++i) {
            const Integer& d = snf.D(i, i);
            if (d == 1) continue;
            orders_.push_back(d);
            RatVector lift(n);
            for (std::size_t r = 0; r < n; ++r) lift[r] = make_rational(snf.V(r, i), d);
            lifts_.push_back(reduce_mod_lattice(lift));
            coord_rows_.push_back(vinv.row(i));
        }
    }

    const Lattice& lattice() const { return lattice_; }
    const std::vector<Integer>& orders() const { return orders_; }
    const std::vector<RatVector>& lifts() const { return lifts_; }
    std::size_t generator_count() const { return orders_.size(); }

    Integer order() const {
        Integer o = 1;
        for (const auto& d : orders_) o *= d;
        return o;
    }

    Integer exponent() const {
        Integer e = 1;
        for (const auto& d : orders_) e = lcm_of(e, d);
        return e;
    }

    std::vector<Integer> prime_support() const { return order() == 1 ? std::vector<Integer>{} : prime_divisors(order()); }

    /// b(x, L) in Z, i.e. x lies in the dual lattice.
    bool in_dual(const RatVector& x) const {
        if (x.size() != lattice_.rank()) return false;
        for (std::size_t i = 0; i < lattice_.rank(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < x.size(); ++j) s += Rational(lattice_.gram()(i, j)) * x[j];
            if (s.get_den() != 1) return false;
        }
        return true;
    }

    /// Coefficients (c_i mod d_i) of the class of x in the cyclic generators.
    IntVector coordinates(const RatVector& x) const {
        if (!in_dual(x)) throw LatticeError("vector is not in the dual lattice");
        IntVector c(orders_.size());
        for (std::size_t k = 0; k < orders_.size(); ++k) {
            Rational w = 0;
            for (std::size_t j = 0; j < x.size(); ++j) w += Rational(coord_rows_[k][j]) * x[j];
            Rational scaled = w * Rational(orders_[k]);
            if (scaled.get_den() != 1) throw LatticeError("inconsistent glue coordinates");
            c[k] = mod_nonneg(scaled.get_num(), orders_[k]);
        }
        return c;
    }

    /// Canonical lift of sum c_i g_i.
    RatVector element(const IntVector& coords) const {
        if (coords.size() != orders_.size()) throw DimensionError("glue coordinate length mismatch");
        RatVector x(lattice_.rank(), Rational(0));
        for (std::size_t k = 0; k < coords.size(); ++k)
            for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(coords[k]) * lifts_[k][j];
        return reduce_mod_lattice(x);
    }

    bool is_trivial_class(const RatVector& x) const {
        for (const auto& c : coordinates(x))
            if (c != 0) return false;
        return true;
    }

    /// Order of the class of x.
    Integer class_order(const RatVector& x) const {
        IntVector c = coordinates(x);
        Integer o = 1;
        for (std::size_t k = 0; k < c.size(); ++k) {
            Integer g = gcd_of(c[k], orders_[k]);
            o = lcm_of(o, orders_[k] / g);
        }
        return o;
    }

  private:
    Lattice lattice_;
    std::vector<Integer> orders_;
    std::vector<RatVector> lifts_;
    std::vector<IntVector> coord_rows_;  // rows of V^{-1} for the kept factors
};

inline GlueGroup glue_group(const Lattice& l) { return GlueGroup(l); }

/// b(x, y) mod 1 for dual vectors x, y.
inline TorsionValue torsion_bilinear(const GlueGroup& g, const RatVector& x, const RatVector& y) {
    if (!g.in_dual(x) || !g.in_dual(y)) throw LatticeError("torsion form arguments must lie in the dual lattice");
    return TorsionValue::bilinear(g.lattice().product(x, y));
}

/// b(x, x) mod 2; only defined for even lattices.
inline TorsionValue torsion_quadratic(const GlueGroup& g, const RatVector& x) {
    if (!g.lattice().is_even()) throw LatticeError("torsion quadratic form requires an even lattice");
    if (!g.in_dual(x)) throw LatticeError("torsion form argument must lie in the dual lattice");
    return TorsionValue::quadratic(g.lattice().norm(x));
}

/// The p-primary part of a glue group. Generator j is the p-part of cyclic
/// factor factor_index[j], namely cofactor[j] * g_{factor_index[j]}.
struct SylowComponent {
    Integer prime;
    std::vector<RatVector> generators;
    std::vector<Integer> orders;
    std::vector<std::size_t> factor_index;
    std::vector<Integer> cofactor;
    bool killed_by_p = false;

    std::size_t dimension() const { return generators.size(); }
    Integer order() const {
        Integer o = 1;
        for (const auto& d : orders) o *= d;
        return o;
    }
};

inline std::vector<SylowComponent> sylow_decomposition(const GlueGroup& g) {
    std::vector<SylowComponent> out;
    for (const auto& p : g.prime_support()) {
        SylowComponent comp;
        comp.prime = p;
        comp.killed_by_p = true;
        for (std::size_t i = 0; i < g.orders().size(); ++i) {
            Integer d = g.orders()[i];
            Integer pe = 1;
            while (d % p == 0) {
                d /= p;
                pe *= p;
            }
            if (pe == 1) continue;
            IntVector coords(g.orders().size(), Integer(0));
            coords[i] = d;
            comp.generators.push_back(g.element(coords));
            comp.orders.push_back(pe);
            comp.factor_index.push_back(i);
            comp.cofactor.push_back(d);
            if (pe != p) comp.killed_by_p = false;
        }
        out.push_back(std::move(comp));
    }
    return out;
}

/// Coordinates of the p-primary projection of the class of x in the
/// component generators.
inline IntVector component_coordinates(const GlueGroup& g, const SylowComponent& comp, const RatVector& x) {
    IntVector full = g.coordinates(x);
    IntVector c(comp.dimension());
    for (std::size_t j = 0; j < comp.dimension(); ++j) {
        const Integer& pe = comp.orders[j];
        c[j] = mod_nonneg(full[comp.factor_index[j]] * inverse_mod(comp.cofactor[j], pe), pe);
    }
    return c;
}

inline RatVector component_element(const SylowComponent& comp, const IntVector& coords) {
    if (comp.generators.empty()) return {};
    RatVector x(comp.generators.front().size(), Rational(0));
    for (std::size_t j = 0; j < coords.size(); ++j)
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += Rational(coords[j]) * comp.generators[j][r];
    return reduce_mod_lattice(x);
}

/// Action of an isometry on the glue group and on each Sylow component.
struct GlueAction {
    struct PrimePart {
        Integer prime;
        IntMatrix matrix;  // column j: coordinates of t(h_j) in the component generators
        std::vector<Integer> orders;
        bool killed_by_p = false;
        std::optional<IntPoly> charpoly_mod_p;  // present when killed_by_p
    };

    IntMatrix on_generators;  // column j: coordinates of t(g_j)
    std::vector<PrimePart> parts;

    const PrimePart& part(const Integer& p) const {
        for (const auto& pp : parts)
            if (pp.prime == p) return pp;
        throw std::out_of_range("no Sylow component for prime " + p.get_str());
    }

    /// True when the action on the p-part is -id.
    bool is_minus_identity(const Integer& p) const {
        const PrimePart& pp = part(p);
        for (std::size_t i = 0; i < pp.matrix.rows(); ++i)
            for (std::size_t j = 0; j < pp.matrix.cols(); ++j) {
                Integer expect = (i == j) ? Integer(-1) : Integer(0);
                if (mod_nonneg(pp.matrix(i, j) - expect, pp.orders[i]) != 0) return false;
            }
        return true;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < on_generators.rows(); ++i)
            for (std::size_t j = 0; j < on_generators.cols(); ++j)
                if (on_generators(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }
};

inline RatVector apply(const IntMatrix& m, const RatVector& x) { return to_rational(m) * x; }

inline GlueAction induced_glue_action(const Isometry& t, const GlueGroup& g) {
    GlueAction act;
    const std::size_t k = g.generator_count();
    act.on_generators = IntMatrix(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        IntVector c = g.coordinates(apply(t.matrix(), g.lifts()[j]));
        for (std::size_t i = 0; i < k; ++i) act.on_generators(i, j) = c[i];
    }
    for (const auto& comp : sylow_decomposition(g)) {
        GlueAction::PrimePart part;
        part.prime = comp.prime;
        part.orders = comp.orders;
        part.killed_by_p = comp.killed_by_p;
        const std::size_t d = comp.dimension();
        part.matrix = IntMatrix(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            IntVector c = component_coordinates(g, comp, apply(t.matrix(), comp.generators[j]));
            for (std::size_t i = 0; i < d; ++i) part.matrix(i, j) = c[i];
        }
        if (comp.killed_by_p) part.charpoly_mod_p = modp::reduce(charpoly(part.matrix), comp.prime);
        act.parts.push_back(std::move(part));
    }
    return act;
}

inline GlueAction induced_glue_action(const Isometry& t) { return induced_glue_action(t, GlueGroup(t.lattice())); }

/// Exhaustive over generator pairs: the induced action preserves the torsion
/// bilinear form, and the quadratic form when the lattice is even.
inline bool preserves_torsion_form(const Isometry& t, const GlueGroup& g) {
    const auto& lifts = g.lifts();
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        RatVector ti = apply(t.matrix(), lifts[i]);
        if (g.lattice().is_even() && torsion_quadratic(g, ti) != torsion_quadratic(g, lifts[i])) return false;
        for (std::size_t j = i; j < lifts.size(); ++j) {
            RatVector tj = apply(t.matrix(), lifts[j]);
            if (torsion_bilinear(g, ti, tj) != torsion_bilinear(g, lifts[i], lifts[j])) return false;
        }
    }
    return true;
}

/// The twist L(a) with a = A(t): Gram a^T G. Requires a self-adjoint for b
/// and det(a) != 0.
inline Lattice twist(const Isometry& t, const IntPoly& a_poly) {
    IntMatrix a = evaluate(a_poly, t.matrix());
    const IntMatrix& g = t.lattice().gram();
    if (k3glue::det(a) == 0) throw SingularMatrix("twist element is singular");
    IntMatrix twisted = a.transpose() * g;
    if (!twisted.is_symmetric()) throw LatticeError("twisted form is not symmetric");
    return Lattice(std::move(twisted));
}

struct Sublattice {
    IntMatrix basis;  // columns, in ambient coordinates
    Lattice lattice;  // restricted form
};

inline Lattice restrict_form(const Lattice& l, const IntMatrix& basis) {
    return Lattice(basis.transpose() * l.gram() * basis);
}

/// S^perp = { y : b(y, s) = 0 for all columns s of S }.
inline Sublattice orthogonal_complement(const Lattice& l, const IntMatrix& s) {
    if (s.rows() != l.rank()) throw DimensionError("generator matrix has the wrong ambient dimension");
    IntMatrix k = integer_kernel(s.transpose() * l.gram());
    if (k.cols() == 0) throw LatticeError("orthogonal complement is zero (degenerate restriction)");
    IntMatrix restricted = k.transpose() * l.gram() * k;
    if (k3glue::det(restricted) == 0) throw LatticeError("orthogonal complement is degenerate");
    return {k, Lattice(std::move(restricted))};
}

struct PrimitivityResult {
    bool primitive = false;
    IntMatrix saturation;  // columns: basis of L cap QS, Hermite-canonical
};

/// Canonical column basis of the lattice spanned by the columns of s.
inline IntMatrix canonical_basis(const IntMatrix& s) {
    HnfResult h = hermite_normal_form(s.transpose());
    IntMatrix out(s.rows(), h.rank);
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < s.rows(); ++j) out(j, i) = h.H(i, j);
    return out;
}

inline bool same_span(const IntMatrix& a, const IntMatrix& b) { return canonical_basis(a) == canonical_basis(b); }

inline PrimitivityResult is_primitive(const Lattice& l, const IntMatrix& s) {
    if (s.rows() != l.rank()) throw DimensionError("generator matrix has the wrong ambient dimension");
    if (rank(s) != s.cols()) throw DimensionError("generator matrix must have full column rank");
    SnfResult snf = smith_normal_form(s);
    bool primitive = true;
    for (const auto& d : snf.diagonal())
        if (d != 1) primitive = false;
    IntMatrix uinv = to_integer(inverse(snf.U));
    IntMatrix sat = uinv.block(0, 0, uinv.rows(), s.cols());
    return {primitive, canonical_basis(sat)};
}

/// The square conditions on the characteristic polynomial F of an isometry of
/// an even unimodular lattice of rank 2n: |F(1)|, |F(-1)|, (-1)^n F(1) F(-1).
struct SquareCondition {
    Integer f_at_1;
    Integer f_at_minus_1;
    Integer signed_product;
    bool abs_f1_square = false;
    bool abs_fm1_square = false;
    bool product_square = false;

    bool holds() const { return abs_f1_square && abs_fm1_square && product_square; }
};

inline SquareCondition square_condition(const IntPoly& f) {
    if (f.degree() < 0 || f.degree() % 2 != 0) throw std::invalid_argument("square condition needs even degree");
    long n = f.degree() / 2;
    SquareCondition sc;
    sc.f_at_1 = f(Integer(1));
    sc.f_at_minus_1 = f(Integer(-1));
    sc.signed_product = sc.f_at_1 * sc.f_at_minus_1;
    if (n % 2 == 1) sc.signed_product = -sc.signed_product;
    sc.abs_f1_square = is_perfect_square(abs(sc.f_at_1));
    sc.abs_fm1_square = is_perfect_square(abs(sc.f_at_minus_1));
    sc.product_square = is_perfect_square(sc.signed_product);
    return sc;
}

}  // namespace k3glue
