#pragma once

// Arithmetic in Q(zeta_n) = Q[X]/(Phi_n) and in its real subfield
// Q(zeta + zeta^-1) = Q[Y]/(Psi_n); trace-form lattices and real embeddings.

#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/linalg.hpp"
#include "k3glue/polynomial.hpp"
#include "k3glue/real_roots.hpp"

namespace k3glue {

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Phi_n: X^n - 1 divided by Phi_d for every proper divisor d of n.
inline IntPoly cyclotomic_poly(unsigned long n) {
    if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
    IntPoly f = IntPoly::monomial(1, n) - IntPoly::constant(1);
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) f = exact_divide(f, cyclotomic_poly(d));
    return f;
}

/// V_k with V_k(X + 1/X) = X^k + X^-k (V_0 = 2, V_1 = Y).
inline IntPoly chebyshev_v(unsigned long k) {
    IntPoly prev = IntPoly::constant(2), cur = IntPoly::x();
    if (k == 0) return prev;
    for (unsigned long i = 1; i < k; ++i) {
        IntPoly next = IntPoly::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

/// Q(zeta_n) with the power basis 1, zeta, ..., zeta^(d-1), d = phi(n).
class CycloField {
  public:
    static CycloFieldPtr make(unsigned long n) { return CycloFieldPtr(new CycloField(n)); }

    unsigned long conductor() const { return n_; }
    std::size_t degree() const { return d_; }
    const IntPoly& phi() const { return phi_; }
    /// Psi_n, present when the degree is even (n >= 3).
    const std::optional<IntPoly>& psi() const { return psi_; }
    /// Tr(zeta^k) for 0 <= k < degree.
    const IntVector& power_traces() const { return traces_; }

    RatPoly reduce(const RatPoly& p) const { return p % to_rational(phi_); }

  private:
    explicit CycloField(unsigned long n) : n_(n), phi_(cyclotomic_poly(n)) {
        d_ = static_cast<std::size_t>(phi_.degree());
        // Newton's identities on the roots of Phi_n.
        const auto& a = phi_.coeffs();
        traces_.assign(d_, Integer(0));
        traces_[0] = static_cast<unsigned long>(d_);
        for (std::size_t k = 1; k < d_; ++k) {
            Integer s = Integer(static_cast<unsigned long>(k)) * a[d_ - k];
            for (std::size_t i = 1; i < k; ++i) s += a[d_ - i] * traces_[k - i];
            traces_[k] = -s;
        }
        if (d_ % 2 == 0 && n_ >= 3) psi_ = compute_psi();
    }

    IntPoly compute_psi() const {
        const std::size_t h = d_ / 2;
        const auto& c = phi_.coeffs();
        IntPoly psi = IntPoly::constant(c[h]);
        for (std::size_t k = 1; k <= h; ++k) {
            if (c[h + k] != c[h - k]) throw std::domain_error("cyclotomic polynomial is not palindromic");
            psi = psi + c[h + k] * chebyshev_v(k);
        }
        return psi;
    }

    unsigned long n_;
    std::size_t d_ = 0;
    IntPoly phi_;
    std::optional<IntPoly> psi_;
    IntVector traces_;
};

/// Checks Phi_n(X) == X^(d/2) * Psi(X + 1/X) by expanding the right side.
inline bool verify_trace_polynomial(const IntPoly& phi, const IntPoly& psi) {
    if (phi.degree() != 2 * psi.degree()) return false;
    const auto h = static_cast<std::size_t>(psi.degree());
    std::vector<Integer> expanded(2 * h + 1, Integer(0));
    for (std::size_t j = 0; j < psi.coeffs().size(); ++j) {
        Integer binom = 1;
        for (std::size_t i = 0; i <= j; ++i) {
            expanded[h + j - 2 * i] += psi.coeffs()[j] * binom;
            binom = binom * static_cast<unsigned long>(j - i) / static_cast<unsigned long>(i + 1);
        }
    }
    return IntPoly(std::move(expanded)) == phi;
}

/// Psi_n, verified against the defining identity.
inline IntPoly trace_polynomial(const CycloField& field) {
    if (!field.psi()) throw std::domain_error("trace polynomial needs an even-degree cyclotomic field");
    if (!verify_trace_polynomial(field.phi(), *field.psi())) throw std::domain_error("trace polynomial identity fails");
    return *field.psi();
}

/// An element of Q(zeta_n), stored as its residue modulo Phi_n.
class CycloElement {
  public:
    CycloElement(CycloFieldPtr field, const RatPoly& p) : field_(std::move(field)) {
        RatPoly r = field_->reduce(p);
        coeffs_.assign(field_->degree(), Rational(0));
        for (std::size_t k = 0; k < r.coeffs().size(); ++k) coeffs_[k] = r.coeffs()[k];
    }

    static CycloElement from_integer(CycloFieldPtr field, long v) { return {std::move(field), RatPoly::constant(v)}; }

    /// zeta^k for any integer k.
    static CycloElement zeta_power(CycloFieldPtr field, long k) {
        auto n = static_cast<long>(field->conductor());
        long e = ((k % n) + n) % n;
        return {std::move(field), RatPoly::monomial(1, static_cast<std::size_t>(e))};
    }

    const CycloFieldPtr& field() const { return field_; }
    const RatVector& coeffs() const { return coeffs_; }
    RatPoly poly() const { return RatPoly(coeffs_); }
    bool is_zero() const { return poly().is_zero(); }

    bool is_integral() const {
        for (const auto& c : coeffs_)
            if (c.get_den() != 1) return false;
        return true;
    }

    /// Integer coefficient polynomial A with this = A(zeta); throws unless integral.
    IntPoly integer_poly() const {
        if (!is_integral()) throw std::domain_error("element is not integral");
        std::vector<Integer> c;
        for (const auto& v : coeffs_) c.push_back(v.get_num());
        return IntPoly(std::move(c));
    }

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b) {
        same_field(a, b);
        return {a.field_, a.poly() + b.poly()};
    }
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b) {
        same_field(a, b);
        return {a.field_, a.poly() - b.poly()};
    }
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
        same_field(a, b);
        return {a.field_, a.poly() * b.poly()};
    }
    friend CycloElement operator*(const Rational& s, const CycloElement& a) { return {a.field_, s * a.poly()}; }
    friend bool operator==(const CycloElement& a, const CycloElement& b) {
        return a.field_->conductor() == b.field_->conductor() && a.coeffs_ == b.coeffs_;
    }

    /// Inverse via the extended Euclidean algorithm against Phi_n.
    CycloElement inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero");
        auto [g, s, t] = extended_gcd(poly(), to_rational(field_->phi()));
        if (g.degree() != 0) throw std::domain_error("element is not invertible");
        return {field_, s};
    }

    /// zeta -> zeta^-1.
    CycloElement involution() const {
        const auto n = field_->conductor();
        std::vector<Rational> c(n, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) c[(n - k) % n] += coeffs_[k];
        return {field_, RatPoly(std::move(c))};
    }

    /// Tr_{K/Q}, by linearity from the cached power traces.
    Rational trace() const {
        Rational t = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) t += coeffs_[k] * Rational(field_->power_traces()[k]);
        return t;
    }

    /// N_{K/Q} = Res(Phi_n, numerator) / den^phi(n).
    Rational norm() const {
        if (is_zero()) throw std::domain_error("norm of zero");
        RatPoly p = poly();
        Integer den = 1;
        for (const auto& c : p.coeffs()) den = lcm_of(den, c.get_den());
        std::vector<Integer> num;
        for (const auto& c : p.coeffs()) num.push_back(Rational(c * Rational(den)).get_num());
        Integer res = resultant(field_->phi(), IntPoly(std::move(num)));
        return Rational(res) / Rational(pow_int(den, field_->degree()));
    }

    std::string to_string() const { return poly().to_string("z"); }

  private:
    static void same_field(const CycloElement& a, const CycloElement& b) {
        if (a.field_->conductor() != b.field_->conductor()) throw std::invalid_argument("elements of different fields");
    }

    CycloFieldPtr field_;
    RatVector coeffs_;
};

inline CycloElement evaluate_at(const RatPoly& p, const CycloElement& x) {
    CycloElement acc = CycloElement::from_integer(x.field(), 0);
    for (std::size_t k = p.coeffs().size(); k-- > 0;)
        acc = acc * x + CycloElement(x.field(), RatPoly::constant(p.coeffs()[k]));
    return acc;
}

/// zeta + zeta^-1.
inline CycloElement real_generator(const CycloFieldPtr& field) {
    return CycloElement::zeta_power(field, 1) + CycloElement::zeta_power(field, -1);
}

/// An element of the real subfield k = Q(zeta + zeta^-1) = Q[Y]/(Psi_n).
class RealSubfieldElement {
  public:
    RealSubfieldElement(CycloFieldPtr field, const RatPoly& p) : field_(std::move(field)) {
        if (!field_->psi()) throw std::domain_error("field has no trace polynomial");
        RatPoly r = p % to_rational(*field_->psi());
        coeffs_.assign(static_cast<std::size_t>(field_->psi()->degree()), Rational(0));
        for (std::size_t k = 0; k < r.coeffs().size(); ++k) coeffs_[k] = r.coeffs()[k];
    }

    /// Re-expresses an involution-fixed element of K in the Y-basis.
    static RealSubfieldElement from_cyclo(const CycloElement& e) {
        if (!(e.involution() == e)) throw std::domain_error("element is not fixed by the involution");
        const CycloFieldPtr& f = e.field();
        const auto h = static_cast<std::size_t>(f->psi()->degree());
        const std::size_t d = f->degree();
        // Columns: Y^j evaluated in K. Solve columns * c = e by elimination.
        RatMatrix aug(d, h + 1);
        CycloElement y = real_generator(f);
        CycloElement pw = CycloElement::from_integer(f, 1);
        for (std::size_t j = 0; j < h; ++j) {
            for (std::size_t i = 0; i < d; ++i) aug(i, j) = pw.coeffs()[i];
            pw = pw * y;
        }
        for (std::size_t i = 0; i < d; ++i) aug(i, h) = e.coeffs()[i];
        std::size_t row = 0;
        std::vector<std::size_t> pivots;
        for (std::size_t col = 0; col < h; ++col) {
            std::size_t piv = row;
            while (piv < d && aug(piv, col) == 0) ++piv;
            if (piv == d) throw std::domain_error("powers of zeta + zeta^-1 are dependent");
            aug.swap_rows(row, piv);
            Rational p = aug(row, col);
            for (std::size_t j = 0; j <= h; ++j) aug(row, j) /= p;
            for (std::size_t i = 0; i < d; ++i) {
                if (i == row || aug(i, col) == 0) continue;
                Rational fct = aug(i, col);
                for (std::size_t j = 0; j <= h; ++j) aug(i, j) -= fct * aug(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        for (std::size_t i = row; i < d; ++i)
            if (aug(i, h) != 0) throw std::domain_error("element does not lie in the real subfield");
        std::vector<Rational> c(h);
        for (std::size_t i = 0; i < h; ++i) c[pivots[i]] = aug(i, h);
        return {f, RatPoly(std::move(c))};
    }

    const CycloFieldPtr& field() const { return field_; }
    RatPoly poly() const { return RatPoly(coeffs_); }
    bool is_zero() const { return poly().is_zero(); }

    CycloElement to_cyclo() const { return evaluate_at(poly(), real_generator(field_)); }

    friend RealSubfieldElement operator*(const RealSubfieldElement& a, const RealSubfieldElement& b) {
        return {a.field_, a.poly() * b.poly()};
    }
    friend RealSubfieldElement operator+(const RealSubfieldElement& a, const RealSubfieldElement& b) {
        return {a.field_, a.poly() + b.poly()};
    }
    friend bool operator==(const RealSubfieldElement& a, const RealSubfieldElement& b) {
        return a.field_->conductor() == b.field_->conductor() && a.coeffs_ == b.coeffs_;
    }

    RealSubfieldElement inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero");
        auto [g, s, t] = extended_gcd(poly(), to_rational(*field_->psi()));
        if (g.degree() != 0) throw std::domain_error("element is not invertible");
        return {field_, s};
    }

    std::string to_string() const { return poly().to_string("Y"); }

  private:
    CycloFieldPtr field_;
    RatVector coeffs_;
};

/// N_{k/Q}(e) = Res(Psi_n, numerator) / den^deg(Psi_n)  (Psi_n is monic).
inline Rational norm_real_subfield(const RealSubfieldElement& e) {
    if (e.is_zero()) throw std::domain_error("norm of zero");
    RatPoly p = e.poly();
    Integer den = 1;
    for (const auto& c : p.coeffs()) den = lcm_of(den, c.get_den());
    std::vector<Integer> num;
    for (const auto& c : p.coeffs()) num.push_back(Rational(c * Rational(den)).get_num());
    const IntPoly& psi = *e.field()->psi();
    Integer res = resultant(psi, IntPoly(std::move(num)));
    return Rational(res) / Rational(pow_int(den, static_cast<unsigned long>(psi.degree())));
}

/// mu = 1 / Psi_n'(zeta + zeta^-1), computed in Q[X]/(Phi_n).
inline CycloElement trace_form_scale(const CycloFieldPtr& field) {
    IntPoly dpsi = trace_polynomial(*field).derivative();
    return evaluate_at(to_rational(dpsi), real_generator(field)).inverse();
}

/// The twisting element a = u1 * u2 * a' of Q(zeta_50) and its ingredients.
struct TwistElement {
    CycloElement u1;
    CycloElement u2;
    CycloElement a_prime;
    CycloElement a;
    RealSubfieldElement a_real;
    Rational norm_u1;
    Rational norm_u2;
    Rational norm_a_prime;
    Rational norm_a;
    bool divides_3001 = false;  // 3001 * a^-1 is integral
};

inline TwistElement build_twist_element(const CycloFieldPtr& field) {
    if (field->conductor() != 50) throw std::invalid_argument("the twisting element lives in Q(zeta_50)");
    auto z = [&](long k) { return CycloElement::zeta_power(field, k); };
    CycloElement u1 = z(2) + z(0) + z(-2);
    CycloElement u2 = CycloElement::from_integer(field, 0);
    for (long i = 0; i <= 5; ++i) u2 = u2 + z(2 * i + 1) + z(-(2 * i + 1));
    CycloElement y = real_generator(field);
    CycloElement a_prime =
        (y - CycloElement::from_integer(field, 3)) * (y + CycloElement::from_integer(field, 2)).inverse();
    CycloElement a = u1 * u2 * a_prime;

    if (!a.is_integral()) throw std::logic_error("twisting element is not integral");
    if (!(a.involution() == a)) throw std::logic_error("twisting element is not in the real subfield");
    RealSubfieldElement a_real = RealSubfieldElement::from_cyclo(a);
    Rational norm_a = norm_real_subfield(a_real);
    if (norm_a != 3001) throw std::logic_error("twisting element has norm " + to_string(norm_a));
    bool divides = (Rational(3001) * a.inverse()).is_integral();
    if (!divides) throw std::logic_error("3001 is not a multiple of the twisting element");

    return {u1,
            u2,
            a_prime,
            a,
            a_real,
            norm_real_subfield(RealSubfieldElement::from_cyclo(u1)),
            norm_real_subfield(RealSubfieldElement::from_cyclo(u2)),
            norm_real_subfield(RealSubfieldElement::from_cyclo(a_prime)),
            norm_a,
            divides};
}

struct TraceFormLattice {
    Lattice lattice;
    Isometry multiplication_by_zeta;
};

/// (Z[zeta], b_a) with b_a(x, y) = Tr(a x iota(y) / Psi'(zeta + zeta^-1)) in
/// the power basis; multiplication by zeta is the isometry.
inline TraceFormLattice build_trace_form_lattice(const CycloFieldPtr& field, const CycloElement& a) {
    if (!a.is_integral()) throw std::invalid_argument("trace-form weight must be integral");
    if (!(a.involution() == a)) throw std::invalid_argument("trace-form weight must be fixed by the involution");
    if (a.is_zero()) throw std::invalid_argument("trace-form weight must be nonzero");
    const std::size_t d = field->degree();
    CycloElement c = a * trace_form_scale(field);
    // T[delta + d - 1] = Tr(c * zeta^delta), delta = i - j
    std::vector<Integer> t(2 * d - 1);
    for (long delta = -static_cast<long>(d - 1); delta <= static_cast<long>(d - 1); ++delta) {
        Rational v = (c * CycloElement::zeta_power(field, delta)).trace();
        if (v.get_den() != 1) throw std::domain_error("trace form is not integral");
        t[static_cast<std::size_t>(delta + static_cast<long>(d) - 1)] = v.get_num();
    }
    IntMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = t[i + d - 1 - j];
    Lattice l(std::move(g));
    Isometry zeta(l, companion_matrix(field->phi()));
    return {std::move(l), std::move(zeta)};
}

/// Labels k (1 <= k < n/2, gcd(k, n) = 1) ascending; the k-th label belongs to
/// the root 2cos(2 pi k / n) of Psi_n, so labels ascend as roots descend.
inline std::vector<unsigned long> real_embedding_labels(unsigned long n) {
    std::vector<unsigned long> ks;
    for (unsigned long k = 1; 2 * k < n; ++k)
        if (std::gcd(k, n) == 1) ks.push_back(k);
    return ks;
}

struct EmbeddingValue {
    unsigned long k = 0;  // the embedding zeta + zeta^-1 -> zeta^k + zeta^-k
    int sign = 0;
    Approximation value;
    RootInterval root;  // isolating interval of 2cos(2 pi k / n)
};

/// Sign and decimal value of e under every real embedding of k.
inline std::vector<EmbeddingValue> real_embedding_signs(const RealSubfieldElement& e, int digits) {
    const IntPoly& psi = *e.field()->psi();
    std::vector<RootInterval> roots = real_root_isolation(psi);
    std::vector<unsigned long> labels = real_embedding_labels(e.field()->conductor());
    if (roots.size() != labels.size()) throw std::logic_error("trace polynomial has non-real roots");
    RatPoly r = e.poly();
    std::vector<EmbeddingValue> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const RootInterval& iv = roots[roots.size() - 1 - i];
        EmbeddingValue ev;
        ev.k = labels[i];
        ev.root = iv;
        ev.sign = sign_at_root(r, psi, iv);
        ev.value = approximate_at_root(r, psi, iv, digits);
        out.push_back(std::move(ev));
    }
    return out;
}

}  // namespace k3glue
