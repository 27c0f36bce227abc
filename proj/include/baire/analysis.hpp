#ifndef BAIRE_ANALYSIS_HPP
#define BAIRE_ANALYSIS_HPP

/**
 * @file analysis.hpp
 *
 * Improver checks, minimal improver constants, big-O certificates by
 * subprefix domination, the dominance transfer of fixed points and the
 * self-distance obstruction for the complexity partial metric.
 *
 * Every verdict is certified only through the materialized horizon.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baire/hexpr.hpp"
#include "baire/letter.hpp"
#include "baire/numerics.hpp"
#include "baire/recurrences.hpp"
#include "baire/spaces.hpp"
#include "baire/words.hpp"

namespace baire {

/**
 * g(1) = base_value, g(n) = constant * shape(n) on the grid, inf off it.
 * `grid_base` 0 means every n >= 2 is on the grid.
 */
struct CandidateBound {
    ExtPos base_value = 1;
    HExpr shape;
    Rational constant = 1;
    std::uint64_t grid_base = 0;

    bool on_bound_grid(std::uint64_t n) const { return grid_base == 0 ? n >= 2 : on_grid(n, grid_base); }

    Letter at(std::uint64_t n, const Precision& prec = {}) const {
        if (n == 1) {
            return Letter(base_value);
        }
        if (!on_bound_grid(n)) {
            return Letter::infinity();
        }
        const Rational k = constant;
        const HExpr phi = shape;
        auto value = [k, phi, n](unsigned bits) { return Enclosure(k) * phi.eval(n, bits); };
        const bool positive =
            escalate([&](unsigned bits) { return less(Enclosure(Rational(0)), value(bits)); }, prec,
                     "sign of the candidate bound");
        if (!positive) {
            throw DomainError("candidate bound is not positive at n = " + std::to_string(n));
        }
        return make_letter(value, prec);
    }

    /// The bound as a word materialized through `limit` with certified-bound exponent `exponent`.
    Word as_word(std::uint64_t limit, std::uint64_t exponent, const Precision& prec = {}) const {
        if (grid_base != 0) {
            std::map<std::uint64_t, Letter> e;
            e.emplace(1, Letter(base_value));
            for (std::uint64_t k = grid_base; k <= limit; k *= grid_base) {
                e.emplace(k, at(k, prec));
                if (k > limit / grid_base) break;
            }
            return Word::sparse(std::move(e), std::nullopt, limit, exponent);
        }
        std::vector<Letter> w;
        w.reserve(limit);
        for (std::uint64_t n = 1; n <= limit; ++n) w.push_back(at(n, prec));
        return Word::truncated(std::move(w));
    }

    std::string str() const { return to_string(constant) + " * (" + shape.str() + ")"; }
};

/// k * shape on the schema's grid with g(1) = c.
inline CandidateBound bound_for(const Schema& s, HExpr shape, const Rational& k) {
    CandidateBound g;
    g.base_value = base_cost(s);
    g.shape = std::move(shape);
    g.constant = k;
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        g.grid_base = dc->b;
    }
    return g;
}

/// Default lower end of the checked range: b^2 for divide and conquer, 2 for linear recurrences.
inline std::uint64_t default_n_min(const Schema& s) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return dc->b * dc->b;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// Improvers

enum class IndexStatus { Holds, Violated, Unknown };

inline std::string to_string(IndexStatus s) {
    switch (s) {
        case IndexStatus::Holds: return "holds";
        case IndexStatus::Violated: return "violated";
        case IndexStatus::Unknown: return "unknown";
    }
    return "?";
}

struct IndexOutcome {
    IndexStatus status = IndexStatus::Unknown;
    Enclosure lhs;  // F(g)(n)
    Enclosure rhs;  // g(n)

    bool operator==(const IndexOutcome&) const = default;
};

struct ImproverReport {
    bool improver = false;
    std::map<std::uint64_t, IndexOutcome> per_index;
    std::uint64_t n_min = 2;
    std::uint64_t horizon = 0;

    std::optional<std::uint64_t> first_failure() const {
        for (const auto& [n, o] : per_index) {
            if (o.status != IndexStatus::Holds) return n;
        }
        return std::nullopt;
    }

    bool operator==(const ImproverReport&) const = default;
};

namespace detail {

inline IndexOutcome compare_letters(const Letter& lhs, const Letter& rhs, const Precision& prec) {
    IndexOutcome out;
    for (unsigned bits = prec.bits; bits <= prec.cap_bits; bits *= 2) {
        const Tri t = letter_leq(lhs, rhs, bits);
        if (!lhs.is_infinite()) out.lhs = lhs.enclose(bits);
        if (!rhs.is_infinite()) out.rhs = rhs.enclose(bits);
        if (t != Tri::Unknown) {
            out.status = t == Tri::True ? IndexStatus::Holds : IndexStatus::Violated;
            return out;
        }
    }
    out.status = IndexStatus::Unknown;
    return out;
}

}  // namespace detail

/**
 * Checks F(g)(n) <= g(n) for every evaluated index n_min <= n within the
 * horizon. The functionals are monotone, so one application decides
 * whether F is an improver with respect to g.
 */
inline ImproverReport is_improver(const Schema& s, const CandidateBound& g, std::uint64_t n_min,
                                  const Horizon& horizon, const Precision& prec = {}) {
    if (!(g.base_value == base_cost(s))) {
        throw DomainError("candidate bound must satisfy g(1) = c");
    }
    const std::uint64_t limit = index_limit(s, horizon);
    const Word gw = g.as_word(limit, horizon.n_max, prec);
    const Word fg = apply_functional(s, cost_word(s, limit, prec), gw);
    ImproverReport report;
    report.n_min = n_min;
    report.horizon = horizon.n_max;
    for (const auto n : evaluated_indices(s, horizon)) {
        if (n < n_min) continue;
        report.per_index.emplace(n, detail::compare_letters(fg.at(n), gw.at(n), prec));
    }
    report.improver = !report.first_failure().has_value();
    return report;
}

// ---------------------------------------------------------------------------
// Minimal constants

struct ThresholdEntry {
    Enclosure threshold;
    bool feasible = true;
    bool in_range = true;
    bool base_transition = false;  // F(g)(n) reads g(1) = base_value

    bool operator==(const ThresholdEntry&) const = default;
};

enum class Agreement { NoClaim, Matches, Sufficient, Differs };

inline std::string to_string(Agreement a) {
    switch (a) {
        case Agreement::NoClaim: return "no claim";
        case Agreement::Matches: return "matches";
        case Agreement::Sufficient: return "sufficient";
        case Agreement::Differs: return "differs";
    }
    return "?";
}

struct ThresholdReport {
    std::map<std::uint64_t, ThresholdEntry> per_index;
    Enclosure sup_threshold;
    bool feasible = true;
    std::uint64_t n_min = 2;
    std::uint64_t horizon = 0;
    std::optional<Rational> claim;
    Agreement agreement = Agreement::NoClaim;
    std::optional<std::uint64_t> witness;  // index whose threshold exceeds the claim

    /// Thresholds below n_min, reported but excluded from the sup.
    std::vector<std::uint64_t> outside_range() const {
        std::vector<std::uint64_t> out;
        for (const auto& [n, e] : per_index) {
            if (!e.in_range) out.push_back(n);
        }
        return out;
    }

    bool operator==(const ThresholdReport&) const = default;
};

/// Compares a claimed constant against in-range thresholds.
inline void adjudicate(ThresholdReport& report, const Rational& claim, const Precision& prec = {}) {
    report.claim = claim;
    report.witness.reset();
    for (const auto& [n, e] : report.per_index) {
        if (!e.in_range) continue;
        if (!e.feasible) {
            report.agreement = Agreement::Differs;
            report.witness = n;
            return;
        }
        if (less(Enclosure(claim), e.threshold) == Tri::True) {
            report.agreement = Agreement::Differs;
            report.witness = n;
            return;
        }
        if (less_equal(e.threshold, Enclosure(claim)) == Tri::Unknown) {
            throw PrecisionError("threshold at n = " + std::to_string(n) + " too close to the claim at " +
                                 std::to_string(prec.bits) + " bits");
        }
    }
    report.agreement = report.sup_threshold.exact() && report.sup_threshold.lo() == claim ? Agreement::Matches
                                                                                            : Agreement::Sufficient;
}

/**
 * For each evaluated index n the candidate g_k = k * shape satisfies
 * F(g_k)(n) <= g_k(n) iff alpha(n) k >= beta(n), since F is affine in g.
 * Solves for the least k per index and reports the sup over n >= n_min.
 */
inline ThresholdReport solve_threshold(const Schema& s, const HExpr& shape, const ExtPos& base_value,
                                       std::uint64_t n_min, const Horizon& horizon, const Precision& prec = {},
                                       std::optional<Rational> claim = std::nullopt) {
    if (base_value.is_infinite()) {
        throw DomainError("base value must be finite");
    }
    const HExpr& h = cost_term(s);
    const auto* dc = std::get_if<DivideConquerRec>(&s);
    const Rational mult = dc ? Rational(static_cast<unsigned long>(dc->a)) : Rational(1);

    ThresholdReport report;
    report.n_min = n_min;
    report.horizon = horizon.n_max;
    bool have_sup = false;
    for (const auto n : evaluated_indices(s, horizon)) {
        const std::uint64_t prev = dc ? n / dc->b : n - 1;
        ThresholdEntry entry;
        entry.in_range = n >= n_min;
        entry.base_transition = prev == 1;
        const auto alpha = [&](unsigned bits) {
            return prev == 1 ? shape.eval(n, bits) : shape.eval(n, bits) - Enclosure(mult) * shape.eval(prev, bits);
        };
        const auto beta = [&](unsigned bits) {
            return prev == 1 ? Enclosure(Rational(mult * base_value.value())) + h.eval(n, bits) : h.eval(n, bits);
        };
        const bool alpha_positive =
            escalate([&](unsigned bits) { return less(Enclosure(Rational(0)), alpha(bits)); }, prec,
                     "sign of the threshold coefficient at n = " + std::to_string(n));
        if (!alpha_positive) {
            // beta = h(n) > 0, so alpha <= 0 leaves no admissible k.
            entry.feasible = false;
            entry.threshold = Enclosure(Rational(0));
        } else {
            entry.threshold = beta(prec.bits) / alpha(prec.bits);
        }
        if (entry.in_range) {
            if (!entry.feasible) {
                report.feasible = false;
            } else if (!have_sup) {
                report.sup_threshold = entry.threshold;
                have_sup = true;
            } else {
                report.sup_threshold = max(report.sup_threshold, entry.threshold);
            }
        }
        report.per_index.emplace(n, std::move(entry));
    }
    if (claim) {
        adjudicate(report, *claim, prec);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Big-O certificates

enum class CertificateMethod { SubprefixDomination, ExplicitWitness };

inline std::string to_string(CertificateMethod m) {
    return m == CertificateMethod::SubprefixDomination ? "subprefix-domination" : "explicit-witness";
}

/// sol(n) <= witness_c * g(n) for witness_n0 <= n <= checked_horizon (index bound).
struct BigOCertificate {
    Rational witness_c = 1;
    std::uint64_t witness_n0 = 1;
    std::uint64_t checked_horizon = 0;
    CertificateMethod method = CertificateMethod::SubprefixDomination;

    bool operator==(const BigOCertificate&) const = default;
};

namespace detail {

/// Indices at which either word may be finite, in increasing order.
inline std::vector<std::uint64_t> finite_positions(const Solution& sol) {
    std::vector<std::uint64_t> out{1};
    for (const auto n : evaluated_indices(sol.schema, sol.horizon)) out.push_back(n);
    return out;
}

inline Word bound_word_for(const Solution& sol, const CandidateBound& g, const Precision& prec) {
    return g.as_word(sol.word.materialized(), sol.word.bound_exponent(), prec);
}

}  // namespace detail

/// Re-checks a certificate by direct comparison at every index in range.
inline bool verify_certificate(const Solution& sol, const CandidateBound& g, const BigOCertificate& cert,
                               const Precision& prec = {}) {
    for (const auto n : detail::finite_positions(sol)) {
        if (n < cert.witness_n0 || n > cert.checked_horizon) continue;
        const Letter bound = scale(cert.witness_c, g.at(n, prec));
        try {
            if (!leq(sol.at(n), bound, prec)) return false;
        } catch (const PrecisionError&) {
            return false;
        }
    }
    return true;
}

/**
 * Emits (1, 1) when the solution word is pointwise dominated by the bound
 * word through the horizon (subprefix route). Otherwise searches
 * c' in {1, 2, 4, ..., 2^16} and n0 in {1, 2, 4, ..., limit/2}, smallest c'
 * first. No certificate is a value, not an error.
 */
inline std::optional<BigOCertificate> certify_big_o(const Solution& sol, const CandidateBound& g,
                                                    const Precision& prec = {}) {
    const std::uint64_t limit = sol.word.materialized();
    const Word gw = detail::bound_word_for(sol, g, prec);
    try {
        if (fully_dominates_prefix(sol.word, gw, prec).holds) {
            return BigOCertificate{Rational(1), 1, limit, CertificateMethod::SubprefixDomination};
        }
    } catch (const PrecisionError&) {
        // fall through to the witness ladder
    }
    const auto positions = detail::finite_positions(sol);
    for (unsigned e = 0; e <= 16; ++e) {
        const Rational cw = pow2(e);
        // Largest index that fails for this constant; n0 must lie beyond it.
        std::uint64_t last_fail = 0;
        for (const auto n : positions) {
            bool ok = false;
            try {
                ok = leq(sol.at(n), scale(cw, gw.at(n)), prec);
            } catch (const PrecisionError&) {
                ok = false;
            }
            if (!ok) last_fail = n;
        }
        for (std::uint64_t n0 = 1; n0 <= limit / 2; n0 *= 2) {
            if (n0 > last_fail) {
                return BigOCertificate{cw, n0, limit, CertificateMethod::ExplicitWitness};
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dominance transfer

struct TransferCheck {
    bool antecedent = false;  // F(u) lies pointwise below u through the horizon
    bool consequent = false;  // the fixed point lies pointwise below u
    bool vacuous() const { return !antecedent; }
    bool holds() const { return !antecedent || consequent; }
};

/**
 * If F(u) is dominated by u then so is the fixed point v. `u` must be an
 * infinite domain word materialized through the same horizon.
 */
inline TransferCheck dominance_transfer_check(const Schema& s, const Word& u, const Horizon& horizon,
                                              const Precision& prec = {}) {
    const std::uint64_t limit = index_limit(s, horizon);
    if (u.materialized() != limit || !u.is_infinite()) {
        throw std::invalid_argument("dominance transfer needs an infinite word materialized through the horizon");
    }
    TransferCheck out;
    const Word fu = apply_functional(s, cost_word(s, limit, prec), u);
    out.antecedent = fully_dominates_prefix(fu, u, prec).holds;
    if (out.antecedent) {
        const Solution v = fixpoint_solve(s, horizon, prec);
        out.consequent = fully_dominates_prefix(v.word, u, prec).holds;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Self-distance obstruction

struct ObstructionReport {
    std::uint64_t series_terms = 0;
    // Pair f = 2c, g = 2(c + 1) on the grid, f(1) = g(1) = c.
    SeriesValue pair;              // p_C(f, g), all n <= N
    Rational pair_without_first;   // p_C(f, g) with the n = 1 term dropped
    SeriesValue pair_image;        // p_C(Phi f, Phi g)
    // Fixed point f_T.
    SeriesValue fixed_point_self;  // p_C(f_T, f_T)
    Rational first_term;           // 2^{-1} / c
    bool self_distance_positive = false;
    DistanceValue baire_self;      // q_B(v, v)
    std::uint64_t horizon = 0;

    bool operator==(const ObstructionReport&) const = default;
};

/**
 * A contraction under a partial metric forces p(x, x) = 0 at its fixed
 * point. p_C(f_T, f_T) >= 1/(2c) > 0 rules that out for p_C, while
 * q_B(v, v) vanishes through the horizon.
 */
inline ObstructionReport matthews_obstruction(const Schema& s, const Horizon& horizon, const Precision& prec = {}) {
    const auto* dc = std::get_if<DivideConquerRec>(&s);
    if (dc == nullptr) {
        throw std::invalid_argument("the obstruction applies to divide and conquer schemas");
    }
    const std::uint64_t N = horizon.n_max;
    const std::uint64_t limit = index_limit(s, horizon);
    const Rational c = dc->c.value();

    std::map<std::uint64_t, Letter> fe;
    std::map<std::uint64_t, Letter> ge;
    fe.emplace(1, Letter(dc->c));
    ge.emplace(1, Letter(dc->c));
    for (const auto k : evaluated_indices(s, horizon)) {
        fe.emplace(k, Letter(Rational(2 * c)));
        ge.emplace(k, Letter(Rational(2 * (c + 1))));
    }
    const Word f = Word::sparse(std::move(fe), std::nullopt, limit, N);
    const Word g = Word::sparse(std::move(ge), std::nullopt, limit, N);
    const Word z = cost_word(s, limit, prec);

    ObstructionReport r;
    r.series_terms = N;
    r.horizon = N;
    r.pair = p_complexity(f, g, N);
    r.pair_without_first = r.pair.partial_sum - Rational(pow2neg(1) / c);
    r.pair_image = p_complexity(apply_theta(*dc, z, f), apply_theta(*dc, z, g), N);

    const Solution v = fixpoint_solve(s, horizon, prec);
    r.fixed_point_self = p_complexity(v.word, v.word, N);
    r.first_term = pow2neg(1) / c;
    r.self_distance_positive = r.fixed_point_self.partial_sum >= r.first_term && sgn(r.first_term) > 0;
    r.baire_self = baire_pqm(v.word, v.word, prec);
    return r;
}

}  // namespace baire

#endif
