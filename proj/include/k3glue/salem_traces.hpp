#pragma once

// Which traces tau = lambda + 1/lambda of degree-2 Salem numbers occur: the
// cyclotomic factors compatible with a rank-22 characteristic polynomial
// (X^2 - tau X + 1) Phi_l^m, the square-condition filter, the closed-form set
// and its cross-check against the realizability axioms.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k3glue/cyclotomic.hpp"
#include "k3glue/integer.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/polynomial.hpp"
#include "k3glue/real_roots.hpp"

namespace k3glue {

inline IntPoly salem_polynomial(const Integer& tau) { return IntPoly{Integer(1), Integer(-tau), Integer(1)}; }

struct CyclotomicPair {
    unsigned long l = 0;
    unsigned long m = 0;
    friend bool operator==(const CyclotomicPair&, const CyclotomicPair&) = default;
};

/// All (l, m) with m * phi(l) = 20, ascending in l. phi(l) >= sqrt(l / 2)
/// bounds the search by l <= 800.
inline std::vector<CyclotomicPair> candidate_pairs() {
    std::vector<CyclotomicPair> out;
    for (unsigned long l = 1; l <= 800; ++l) {
        unsigned long f = euler_phi(l);
        if (20 % f == 0) out.push_back({l, 20 / f});
    }
    return out;
}

/// epsilon = +1 for l in {1, 5, 25}, -1 for l in {2, 10, 50}.
inline std::optional<int> epsilon_of(unsigned long l) {
    if (l == 1 || l == 5 || l == 25) return 1;
    if (l == 2 || l == 10 || l == 50) return -1;
    return std::nullopt;
}

struct TraceCandidate {
    Integer tau;
    unsigned long l = 0;
    unsigned long m = 0;
    std::optional<int> epsilon;
    std::optional<Integer> alpha;  // alpha^2 = tau + 2 epsilon when that is a square
};

inline TraceCandidate make_candidate(const Integer& tau, const CyclotomicPair& p) {
    if (p.m * euler_phi(p.l) != 20) throw std::invalid_argument("candidate must satisfy m * phi(l) = 20");
    TraceCandidate c{tau, p.l, p.m, epsilon_of(p.l), std::nullopt};
    if (c.epsilon) {
        Integer s = tau + 2 * *c.epsilon;
        if (is_perfect_square(s)) c.alpha = isqrt(s);
    }
    return c;
}

/// F = (X^2 - tau X + 1) Phi_l^m.
inline IntPoly candidate_polynomial(const TraceCandidate& c) {
    return salem_polynomial(c.tau) * cyclotomic_poly(c.l).pow(c.m);
}

/// The square conditions on F evaluated through the factorization
/// F(1) = (2 - tau) Phi_l(1)^m and F(-1) = (2 + tau) Phi_l(-1)^m.
inline SquareCondition square_condition_filter(const TraceCandidate& c) {
    if (c.tau < 3) throw std::invalid_argument("tau must be at least 3");
    IntPoly phi = cyclotomic_poly(c.l);
    SquareCondition sc;
    sc.f_at_1 = (2 - c.tau) * pow_int(phi(Integer(1)), c.m);
    sc.f_at_minus_1 = (2 + c.tau) * pow_int(phi(Integer(-1)), c.m);
    sc.signed_product = -sc.f_at_1 * sc.f_at_minus_1;  // (-1)^11
    sc.abs_f1_square = is_perfect_square(abs(sc.f_at_1));
    sc.abs_fm1_square = is_perfect_square(abs(sc.f_at_minus_1));
    sc.product_square = is_perfect_square(sc.signed_product);
    return sc;
}

struct AdmissibleValue {
    TraceCandidate candidate;
    SquareCondition witness;
    std::optional<Integer> five_times;  // 5 (tau - 2 epsilon), when l is not 1 or 2
};

/// Candidates passing the square conditions; for l other than 1 and 2 the
/// value 5 (tau - 2 epsilon) must also be a square.
inline std::vector<AdmissibleValue> admissible_values(const Integer& tau) {
    std::vector<AdmissibleValue> out;
    for (const auto& p : candidate_pairs()) {
        TraceCandidate c = make_candidate(tau, p);
        SquareCondition sc = square_condition_filter(c);
        if (!sc.holds()) continue;
        std::optional<Integer> five;
        if (c.l != 1 && c.l != 2) {
            if (!c.epsilon) continue;
            five = 5 * (tau - 2 * *c.epsilon);
            if (!is_perfect_square(*five)) continue;
        }
        out.push_back({c, sc, five});
    }
    return out;
}

/// The realizability axioms for tau = alpha^2 - 2 epsilon: A_1 = {alpha >= 4},
/// A_-1 = {alpha >= 4} minus {5, 7, 13, 17}. External result, not derived here.
inline bool in_realizable_set(const Integer& alpha, int epsilon) {
    if (alpha < 4) return false;
    if (epsilon == 1) return true;
    return alpha != 5 && alpha != 7 && alpha != 13 && alpha != 17;
}

struct RulingOut {
    bool excluded = false;
    std::string l2_reason;        // the l = 2 route
    std::string l10_50_reason;    // the l in {10, 50} route
};

/// For epsilon = -1, tau = alpha^2 + 2 is excluded iff alpha is one of
/// 2, 3, 5, 7, 13, 17: the l = 2 route needs alpha in A_-1, and the l = 10, 50
/// routes need 5 | alpha^2 + 4.
inline RulingOut rule_out_alpha(const Integer& alpha, int epsilon = -1) {
    if (epsilon != -1) throw std::invalid_argument("only epsilon = -1 is ruled out this way");
    if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
    RulingOut r;
    bool l2_ok = in_realizable_set(alpha, -1);
    Integer s = alpha * alpha + 4;
    bool l1050_ok = s % 5 == 0;
    r.l2_reason = l2_ok ? "alpha in A_-1" : "alpha not in A_-1";
    r.l10_50_reason = l1050_ok ? "5 | alpha^2+4" : "5 does not divide alpha^2+4 = " + s.get_str();
    const long listed[] = {2, 3, 5, 7, 13, 17};
    r.excluded = std::find(std::begin(listed), std::end(listed), alpha) != std::end(listed);
    return r;
}

/// {2} + {alpha^2 - 2 : alpha >= 3} + {alpha^2 + 2 : alpha >= 1, alpha not
/// in {2, 3, 5, 7, 13, 17}}, intersected with [2, n].
inline std::vector<Integer> trace_set(const Integer& n) {
    if (n < 2) throw std::invalid_argument("bound must be at least 2");
    std::vector<Integer> out{Integer(2)};
    for (Integer a = 3; a * a - 2 <= n; ++a) out.push_back(a * a - 2);
    for (Integer a = 1; a * a + 2 <= n; ++a)
        if (!rule_out_alpha(a).excluded) out.push_back(a * a + 2);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Graeffe step: the polynomial whose roots are the squares of the roots of p.
inline IntPoly graeffe(const IntPoly& p) {
    IntPoly prod = p * p.negate_variable();
    std::vector<Integer> even;
    for (std::size_t k = 0; k < prod.coeffs().size(); k += 2) even.push_back(prod.coeffs()[k]);
    IntPoly q(even);
    return p.degree() % 2 == 0 ? q : -q;
}

/// lambda^2 + lambda^-2 = tau^2 - 2: the Graeffe square of X^2 - tau X + 1 is
/// X^2 - (tau^2 - 2) X + 1, and the two share a root (zero resultant).
inline bool squaring_identity_holds(const Integer& tau) {
    IntPoly sq = graeffe(salem_polynomial(tau));
    IntPoly target = salem_polynomial(tau * tau - 2);
    return sq == target && resultant(sq, target) == 0;
}

struct SalemDegree2 {
    Integer tau;
    IntPoly minimal_polynomial;
    RootInterval root;
    Approximation value;
    bool degenerate = false;  // tau = 2: lambda = 1 is not a Salem number
};

inline SalemDegree2 salem_value(const Integer& tau, int digits) {
    if (tau < 2) throw std::invalid_argument("tau must be at least 2");
    if (tau == 2) return {tau, salem_polynomial(tau), {1, 1}, {"1", 1, 1, digits}, true};
    IntPoly p = salem_polynomial(tau);
    std::vector<RootInterval> roots = real_root_isolation(p);
    RootInterval top = roots.back();
    Approximation a = approximate_at_root(RatPoly::x(), p, top, digits);
    return {tau, p, top, a, false};
}

struct CrossValidationRow {
    Integer tau;
    bool closed_form = false;       // tau in the closed-form set
    bool necessary = false;         // admissible_values(tau) is nonempty
    std::string witness;            // empty when none
    bool mismatch = false;

    std::string status() const {
        if (necessary && !witness.empty()) return "member, witness: " + witness;
        if (necessary) return "necessary passed, no witness";
        return "necessary failed";
    }
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    bool pipeline_certified = false;

    std::size_t mismatches() const {
        std::size_t n = 0;
        for (const auto& r : rows)
            if (r.mismatch) ++n;
        return n;
    }
    bool passed() const { return pipeline_certified && mismatches() == 0; }
    const CrossValidationRow* row(const Integer& tau) const {
        for (const auto& r : rows)
            if (r.tau == tau) return &r;
        return nullptr;
    }
};

/// For tau in [3, n], compares closed-form membership with "the necessary
/// conditions hold and a realization is known". The tau = 3 realization is
/// the certified K3 construction, tau = 7 is its square.
inline CrossValidationReport cross_validate(const Integer& n, bool pipeline_certified) {
    if (n < 3) throw std::invalid_argument("bound must be at least 3");
    CrossValidationReport rep;
    rep.pipeline_certified = pipeline_certified;
    std::vector<Integer> closed = trace_set(n);
    for (Integer tau = 3; tau <= n; ++tau) {
        CrossValidationRow row;
        row.tau = tau;
        row.closed_form = std::binary_search(closed.begin(), closed.end(), tau);
        row.necessary = !admissible_values(tau).empty();
        for (int eps : {1, -1}) {
            Integer s = tau + 2 * eps;
            if (row.witness.empty() && is_perfect_square(s) && in_realizable_set(isqrt(s), eps))
                row.witness = "alpha = " + isqrt(s).get_str() + ", epsilon = " + std::to_string(eps);
        }
        if (row.witness.empty() && pipeline_certified) {
            if (tau == 3) row.witness = "certified K3 construction";
            if (tau == 7 && squaring_identity_holds(Integer(3))) row.witness = "square of the tau = 3 isometry";
        }
        row.mismatch = row.closed_form != (row.necessary && !row.witness.empty());
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace k3glue
