#pragma once

// Anti-isometric glue maps between discriminant groups, the resulting even
// unimodular overlattice of L1 + L2, and extension of isometries to it.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/integer.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/linalg.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/polynomial.hpp"

namespace k3glue {

enum class GlueObstruction { StructureMismatch, FormMismatch, Equivariance, SearchTooLarge };

inline std::string to_string(GlueObstruction o) {
    switch (o) {
        case GlueObstruction::StructureMismatch: return "structure mismatch";
        case GlueObstruction::FormMismatch: return "form mismatch";
        case GlueObstruction::Equivariance: return "equivariance";
        case GlueObstruction::SearchTooLarge: return "search too large";
    }
    return "unknown";
}

class NoGlueMap : public std::runtime_error {
  public:
    NoGlueMap(GlueObstruction obstruction, Integer prime, const std::string& detail)
        : std::runtime_error("no glue map at p = " + prime.get_str() + ": " + to_string(obstruction) +
                             (detail.empty() ? "" : " (" + detail + ")")),
          obstruction_(obstruction),
          prime_(std::move(prime)) {}

    GlueObstruction obstruction() const { return obstruction_; }
    const Integer& prime() const { return prime_; }

  private:
    GlueObstruction obstruction_;
    Integer prime_;
};

/// The glued lattice failed a consistency check (the glue map was invalid).
class GluingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The extended isometry is not integral on the glued lattice.
class NonIntegralExtension : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One side of a glue problem: a glue group, its Sylow components and the
/// action of an isometry (identity when the lattice carries none).
struct GlueSide {
    GlueGroup group;
    std::vector<SylowComponent> components;
    GlueAction action;

    explicit GlueSide(const Isometry& t)
        : group(t.lattice()), components(sylow_decomposition(group)), action(induced_glue_action(t, group)) {}

    const SylowComponent& component(const Integer& p) const {
        for (const auto& c : components)
            if (c.prime == p) return c;
        throw std::out_of_range("no Sylow component for prime " + p.get_str());
    }
};

/// gamma_p: column j holds the coordinates (in the target component
/// generators) of the image of source generator j.
struct PrimeGlue {
    Integer prime;
    IntMatrix matrix;
    std::string method;  // "cyclic", "eigenline" or "search"
};

struct GlueMap {
    std::vector<PrimeGlue> parts;  // ascending primes

    const PrimeGlue& part(const Integer& p) const {
        for (const auto& pp : parts)
            if (pp.prime == p) return pp;
        throw std::out_of_range("glue map has no part at " + p.get_str());
    }
};

namespace detail {

inline IntVector column(const IntMatrix& m, std::size_t j) { return m.col(j); }

/// Coordinates of the action applied to a component element.
inline IntVector act_on(const GlueAction::PrimePart& part, const IntVector& x) {
    IntVector y(x.size(), Integer(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += part.matrix(i, j) * x[j];
        y[i] = mod_nonneg(y[i], part.orders[i]);
    }
    return y;
}

inline IntVector apply_glue(const IntMatrix& gamma, const IntVector& x, const std::vector<Integer>& target_orders) {
    IntVector y(gamma.rows(), Integer(0));
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        for (std::size_t j = 0; j < gamma.cols(); ++j) y[i] += gamma(i, j) * x[j];
        y[i] = mod_nonneg(y[i], target_orders[i]);
    }
    return y;
}

inline IntVector unit(std::size_t n, std::size_t j) {
    IntVector e(n, Integer(0));
    e[j] = 1;
    return e;
}

inline TorsionValue q_of(const GlueSide& side, const SylowComponent& comp, const IntVector& x) {
    return torsion_quadratic(side.group, component_element(comp, x));
}

inline TorsionValue b_of(const GlueSide& side, const SylowComponent& comp, const IntVector& x, const IntVector& y) {
    return torsion_bilinear(side.group, component_element(comp, x), component_element(comp, y));
}

/// Enumerates all elements of a component in lexicographic coordinate order.
inline void enumerate_elements(const std::vector<Integer>& orders, const std::function<void(const IntVector&)>& visit) {
    IntVector x(orders.size(), Integer(0));
    for (;;) {
        visit(x);
        std::size_t k = 0;
        while (k < x.size()) {
            x[k] += 1;
            if (x[k] < orders[k]) break;
            x[k] = 0;
            ++k;
        }
        if (k == x.size()) return;
    }
}

}  // namespace detail

/// Which of the glue-map conditions hold for gamma at one prime.
struct GlueMapCheck {
    bool isomorphism = false;
    bool anti_isometry = false;
    bool equivariant = false;

    bool valid() const { return isomorphism && anti_isometry && equivariant; }
};

inline GlueMapCheck check_prime_glue(const GlueSide& s1, const GlueSide& s2, const PrimeGlue& gamma) {
    const SylowComponent& c1 = s1.component(gamma.prime);
    const SylowComponent& c2 = s2.component(gamma.prime);
    const auto& a1 = s1.action.part(gamma.prime);
    const auto& a2 = s2.action.part(gamma.prime);
    const std::size_t k = c1.dimension();
    GlueMapCheck out;

    // Isomorphism: images have the right orders and the map is bijective.
    bool iso = c1.order() == c2.order() && gamma.matrix.rows() == c2.dimension() && gamma.matrix.cols() == k;
    if (iso) {
        for (std::size_t j = 0; j < k && iso; ++j) {
            IntVector img = detail::column(gamma.matrix, j);
            Integer o = 1;
            for (std::size_t i = 0; i < img.size(); ++i)
                o = lcm_of(o, c2.orders[i] / gcd_of(mod_nonneg(img[i], c2.orders[i]), c2.orders[i]));
            if (o != c1.orders[j]) iso = false;
        }
    }
    if (iso) {
        bool homocyclic = true;
        for (const auto& o : c2.orders)
            if (o != c2.orders.front()) homocyclic = false;
        if (homocyclic && c1.orders.size() == c2.orders.size()) {
            iso = gcd_of(det(gamma.matrix), gamma.prime) == 1;
        } else if (c1.order() <= 10000) {
            // injectivity by enumeration: only 0 maps to 0
            std::size_t zeros = 0;
            detail::enumerate_elements(c1.orders, [&](const IntVector& x) {
                IntVector y = detail::apply_glue(gamma.matrix, x, c2.orders);
                bool z = true;
                for (const auto& v : y)
                    if (v != 0) z = false;
                if (z) ++zeros;
            });
            iso = zeros == 1;
        } else {
            iso = false;
        }
    }
    out.isomorphism = iso;
    if (!iso) return out;

    // Anti-isometry of quadratic forms on generators and pairwise sums.
    bool anti = true;
    for (std::size_t i = 0; i < k && anti; ++i) {
        for (std::size_t j = i; j < k && anti; ++j) {
            IntVector x = detail::unit(k, i);
            if (j != i) x[j] += 1;
            IntVector y = detail::apply_glue(gamma.matrix, x, c2.orders);
            TorsionValue q1 = detail::q_of(s1, c1, x);
            TorsionValue q2 = detail::q_of(s2, c2, y);
            if (q2 != q1.negated()) anti = false;
        }
    }
    out.anti_isometry = anti;

    bool equi = true;
    for (std::size_t j = 0; j < k && equi; ++j) {
        IntVector x = detail::unit(k, j);
        IntVector lhs = detail::apply_glue(gamma.matrix, detail::act_on(a1, x), c2.orders);
        IntVector rhs = detail::act_on(a2, detail::apply_glue(gamma.matrix, x, c2.orders));
        if (lhs != rhs) equi = false;
    }
    out.equivariant = equi;
    return out;
}

inline GlueMapCheck check_glue_map(const GlueSide& s1, const GlueSide& s2, const GlueMap& gamma) {
    GlueMapCheck all{true, true, true};
    if (s1.group.prime_support() != s2.group.prime_support()) return {};
    for (const auto& p : s1.group.prime_support()) {
        const PrimeGlue* part = nullptr;
        for (const auto& pp : gamma.parts)
            if (pp.prime == p) part = &pp;
        if (part == nullptr) return {};
        GlueMapCheck c = check_prime_glue(s1, s2, *part);
        all.isomorphism = all.isomorphism && c.isomorphism;
        all.anti_isometry = all.anti_isometry && c.anti_isometry;
        all.equivariant = all.equivariant && c.equivariant;
    }
    return all;
}

namespace detail {

inline PrimeGlue glue_cyclic(const GlueSide& s1, const GlueSide& s2, const Integer& p) {
    const SylowComponent& c1 = s1.component(p);
    const SylowComponent& c2 = s2.component(p);
    const Integer& pe = c1.orders[0];
    TorsionValue q1 = q_of(s1, c1, {Integer(1)});
    const Integer& s1_scalar = s1.action.part(p).matrix(0, 0);
    const Integer& s2_scalar = s2.action.part(p).matrix(0, 0);
    bool form_ok = false;
    for (Integer c = 1; c < pe; ++c) {
        if (gcd_of(c, p) != 1) continue;
        if (q_of(s2, c2, {c}) != q1.negated()) continue;
        form_ok = true;
        if (mod_nonneg(s1_scalar - s2_scalar, pe) != 0) break;
        IntMatrix m(1, 1);
        m(0, 0) = c;
        return {p, m, "cyclic"};
    }
    if (!form_ok)
        throw NoGlueMap(GlueObstruction::FormMismatch, p,
                        "q1 = " + q1.to_string() + ", q2 = " + q_of(s2, c2, {Integer(1)}).to_string());
    throw NoGlueMap(GlueObstruction::Equivariance, p,
                    "actions " + s1_scalar.get_str() + " and " + s2_scalar.get_str() + " differ");
}

/// Eigenvector of a 2x2 matrix over F_p for eigenvalue lambda, first nonzero
/// coordinate normalized to 1.
inline IntVector eigenvector2(const IntMatrix& a, const Integer& lambda, const Integer& p) {
    Integer r00 = mod_nonneg(a(0, 0) - lambda, p), r01 = mod_nonneg(a(0, 1), p);
    Integer r10 = mod_nonneg(a(1, 0), p), r11 = mod_nonneg(a(1, 1) - lambda, p);
    IntVector v;
    if (r00 != 0 || r01 != 0)
        v = {mod_nonneg(-r01, p), r00};
    else if (r10 != 0 || r11 != 0)
        v = {mod_nonneg(-r11, p), r10};
    else
        throw std::domain_error("eigenspace is two-dimensional");
    Integer lead = v[0] != 0 ? v[0] : v[1];
    Integer inv = inverse_mod(lead, p);
    for (auto& x : v) x = mod_nonneg(x * inv, p);
    return v;
}

inline std::optional<PrimeGlue> glue_eigenline(const GlueSide& s1, const GlueSide& s2, const Integer& p) {
    const auto& a1 = s1.action.part(p);
    const auto& a2 = s2.action.part(p);
    if (!a1.charpoly_mod_p || !a2.charpoly_mod_p) return std::nullopt;
    if (*a1.charpoly_mod_p != *a2.charpoly_mod_p)
        throw NoGlueMap(GlueObstruction::Equivariance, p,
                        "characteristic polynomials " + a1.charpoly_mod_p->to_string() + " and " +
                            a2.charpoly_mod_p->to_string() + " differ");
    std::vector<Integer> eig = modp::roots(*a1.charpoly_mod_p, p);
    if (eig.size() != 2) return std::nullopt;  // not split with distinct eigenvalues
    const SylowComponent& c1 = s1.component(p);
    const SylowComponent& c2 = s2.component(p);
    IntVector e1 = eigenvector2(a1.matrix, eig[0], p), e2 = eigenvector2(a1.matrix, eig[1], p);
    IntVector f1 = eigenvector2(a2.matrix, eig[0], p), f2 = eigenvector2(a2.matrix, eig[1], p);
    TorsionValue b1 = b_of(s1, c1, e1, e2);
    TorsionValue b2 = b_of(s2, c2, f1, f2);
    Integer k1 = Rational(b1.value * Rational(p)).get_num();
    Integer k2 = Rational(b2.value * Rational(p)).get_num();
    if (mod_nonneg(k2, p) == 0 || mod_nonneg(k1, p) == 0)
        throw NoGlueMap(GlueObstruction::FormMismatch, p, "eigenlines pair trivially");
    // gamma(e1) = c1 f1, gamma(e2) = c2 f2 with c1 c2 k2 = -k1 (mod p); c1 = 1.
    Integer scale1 = 1;
    Integer scale2 = mod_nonneg(-k1 * inverse_mod(k2, p), p);
    IntMatrix e(2, 2), f(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        e(i, 0) = e1[i];
        e(i, 1) = e2[i];
        f(i, 0) = f1[i] * scale1;
        f(i, 1) = f2[i] * scale2;
    }
    Integer de = mod_nonneg(det(e), p);
    Integer inv = inverse_mod(de, p);
    IntMatrix einv(2, 2);
    einv(0, 0) = mod_nonneg(e(1, 1) * inv, p);
    einv(0, 1) = mod_nonneg(-e(0, 1) * inv, p);
    einv(1, 0) = mod_nonneg(-e(1, 0) * inv, p);
    einv(1, 1) = mod_nonneg(e(0, 0) * inv, p);
    IntMatrix gamma = f * einv;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) gamma(i, j) = mod_nonneg(gamma(i, j), p);
    PrimeGlue out{p, gamma, "eigenline"};
    if (!check_prime_glue(s1, s2, out).valid()) return std::nullopt;
    return out;
}

inline PrimeGlue glue_search(const GlueSide& s1, const GlueSide& s2, const Integer& p) {
    const SylowComponent& c1 = s1.component(p);
    const SylowComponent& c2 = s2.component(p);
    if (c1.order() > 10000) throw NoGlueMap(GlueObstruction::SearchTooLarge, p, "|G_p| = " + c1.order().get_str());
    const std::size_t k = c1.dimension();
    std::vector<IntVector> targets;
    enumerate_elements(c2.orders, [&](const IntVector& y) { targets.push_back(y); });

    std::vector<TorsionValue> q_src(k);
    for (std::size_t j = 0; j < k; ++j) q_src[j] = q_of(s1, c1, unit(k, j));

    std::vector<IntVector> chosen(k);
    bool form_candidate_seen = false;
    std::optional<PrimeGlue> found;
    std::function<void(std::size_t)> dfs = [&](std::size_t j) {
        if (found) return;
        if (j == k) {
            form_candidate_seen = true;
            IntMatrix m(c2.dimension(), k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t i = 0; i < c2.dimension(); ++i) m(i, a) = chosen[a][i];
            PrimeGlue cand{p, m, "search"};
            GlueMapCheck chk = check_prime_glue(s1, s2, cand);
            if (chk.valid()) found = cand;
            return;
        }
        for (const auto& y : targets) {
            // image must have the generator's order and the negated q-value
            Integer o = 1;
            for (std::size_t i = 0; i < y.size(); ++i) o = lcm_of(o, c2.orders[i] / gcd_of(y[i], c2.orders[i]));
            if (o != c1.orders[j]) continue;
            if (q_of(s2, c2, y) != q_src[j].negated()) continue;
            bool pair_ok = true;
            for (std::size_t a = 0; a < j && pair_ok; ++a) {
                TorsionValue b1 = b_of(s1, c1, unit(k, a), unit(k, j));
                TorsionValue b2 = b_of(s2, c2, chosen[a], y);
                if (b2 != b1.negated()) pair_ok = false;
            }
            if (!pair_ok) continue;
            chosen[j] = y;
            dfs(j + 1);
            if (found) return;
        }
    };
    dfs(0);
    if (found) return *found;
    if (!form_candidate_seen) throw NoGlueMap(GlueObstruction::FormMismatch, p, "no anti-isometry exists");
    throw NoGlueMap(GlueObstruction::Equivariance, p, "no anti-isometry commutes with the actions");
}

}  // namespace detail

/// Finds an anti-isometric, equivariant isomorphism G(L1) -> G(L2), prime by
/// prime in increasing order: scalar scan on cyclic parts, eigenline matching
/// on split two-dimensional F_p parts, bounded exhaustive search otherwise.
inline GlueMap find_glue_map(const GlueSide& s1, const GlueSide& s2) {
    if (!s1.group.lattice().is_even() || !s2.group.lattice().is_even())
        throw std::invalid_argument("gluing requires even lattices");
    GlueMap out;
    auto ps1 = s1.group.prime_support(), ps2 = s2.group.prime_support();
    if (s1.group.order() != s2.group.order() || ps1 != ps2)
        throw NoGlueMap(GlueObstruction::StructureMismatch, ps1.empty() ? Integer(0) : ps1.front(),
                        "|G1| = " + s1.group.order().get_str() + ", |G2| = " + s2.group.order().get_str());
    for (const auto& p : ps1) {
        const SylowComponent& c1 = s1.component(p);
        const SylowComponent& c2 = s2.component(p);
        if (c1.orders != c2.orders)
            throw NoGlueMap(GlueObstruction::StructureMismatch, p, "Sylow components are not isomorphic");
        if (c1.dimension() == 1) {
            out.parts.push_back(detail::glue_cyclic(s1, s2, p));
            continue;
        }
        if (c1.killed_by_p && c1.dimension() == 2 && p != 2) {
            if (auto g = detail::glue_eigenline(s1, s2, p)) {
                out.parts.push_back(*g);
                continue;
            }
        }
        out.parts.push_back(detail::glue_search(s1, s2, p));
    }
    return out;
}

inline GlueMap find_glue_map(const Isometry& t1, const Isometry& t2) { return find_glue_map(GlueSide(t1), GlueSide(t2)); }

struct GluingResult {
    Lattice ambient;
    IntMatrix embed1;   // columns: L1 basis in ambient coordinates
    IntMatrix embed2;   // columns: L2 basis in ambient coordinates
    RatMatrix basis;    // columns: ambient basis in (L1 + L2) rational coordinates
    Integer index;      // [ambient : L1 + L2]
    std::optional<Isometry> extended_isometry;
};

/// The overlattice { (x, y) in L1^dual + L2^dual : gamma(x) = y } with a
/// Hermite-canonical basis over (L1 basis, L2 basis, graph lifts).
inline GluingResult glue(const GlueSide& s1, const GlueSide& s2, const GlueMap& gamma) {
    const Lattice& l1 = s1.group.lattice();
    const Lattice& l2 = s2.group.lattice();
    const std::size_t n1 = l1.rank(), n2 = l2.rank(), n = n1 + n2;

    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n, Rational(0));
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    for (const auto& part : gamma.parts) {
        const SylowComponent& c1 = s1.component(part.prime);
        const SylowComponent& c2 = s2.component(part.prime);
        for (std::size_t j = 0; j < c1.dimension(); ++j) {
            RatVector x = c1.generators[j];
            RatVector y = component_element(c2, part.matrix.col(j));
            RatVector g(n);
            for (std::size_t i = 0; i < n1; ++i) g[i] = x[i];
            for (std::size_t i = 0; i < n2; ++i) g[n1 + i] = y[i];
            gens.push_back(std::move(g));
        }
    }
    Integer den = 1;
    for (const auto& g : gens)
        for (const auto& v : g) den = lcm_of(den, v.get_den());
    IntMatrix stack(gens.size(), n);
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) stack(r, c) = Rational(gens[r][c] * Rational(den)).get_num();
    HnfResult h = hermite_normal_form(stack);
    if (h.rank != n) throw GluingError("glue generators do not span full rank");

    RatMatrix basis(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) basis(j, i) = make_rational(h.H(i, j), den);

    IntMatrix block(n, n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) block(i, j) = l1.gram()(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) block(n1 + i, n1 + j) = l2.gram()(i, j);

    RatMatrix g = basis.transpose() * to_rational(block) * basis;
    if (!is_integral(g)) throw GluingError("glued form is not integral");
    Lattice ambient(to_integer(g));
    if (!ambient.is_even()) throw GluingError("glued lattice is not even");
    if (!ambient.is_unimodular())
        throw GluingError("glued lattice is not unimodular (det " + ambient.det().get_str() + ")");

    RatMatrix binv = inverse(basis);
    IntMatrix emb = to_integer(binv);  // L1 + L2 sits inside the ambient lattice
    // [ambient : L1 + L2] = den^n / prod(pivots)
    Rational index_q = 1;
    for (std::size_t i = 0; i < n; ++i) index_q *= make_rational(den, h.H(i, i));
    if (index_q.get_den() != 1) throw GluingError("non-integral index");

    return {std::move(ambient), emb.block(0, 0, n, n1), emb.block(0, n1, n, n2), std::move(basis),
            index_q.get_num(), std::nullopt};
}

inline GluingResult glue(const Isometry& t1, const Isometry& t2, const GlueMap& gamma) {
    return glue(GlueSide(t1), GlueSide(t2), gamma);
}

/// The isometry of the glued lattice restricting to t1 on L1 and t2 on L2.
inline Isometry extend_isometry(const GluingResult& result, const Isometry& t1, const Isometry& t2) {
    const std::size_t n1 = t1.lattice().rank(), n2 = t2.lattice().rank(), n = n1 + n2;
    if (result.ambient.rank() != n) throw DimensionError("isometries do not match the glued lattice");
    RatMatrix block(n, n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) block(i, j) = t1.matrix()(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) block(n1 + i, n1 + j) = t2.matrix()(i, j);
    RatMatrix m = inverse(result.basis) * block * result.basis;
    if (!is_integral(m)) throw NonIntegralExtension("extended isometry is not integral on the glued lattice");
    return Isometry(result.ambient, to_integer(m));
}

}  // namespace k3glue
