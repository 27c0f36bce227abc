#ifndef BAIRE_RECURRENCES_HPP
#define BAIRE_RECURRENCES_HPP

/**
 * @file recurrences.hpp
 *
 * Recurrence schemas, the word functionals whose fixed points solve them,
 * a forward-substitution oracle and the fixed-point solver.
 *
 * Divide and conquer:  T(1) = c,  T(n) = a T(n/b) + h(n)  for n in {b, b^2, ...}
 * Linear:              T(1) = c,  T(n) = T(n-1) + h(n)    for n >= 2
 */

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "baire/hexpr.hpp"
#include "baire/letter.hpp"
#include "baire/numerics.hpp"
#include "baire/spaces.hpp"
#include "baire/words.hpp"

namespace baire {

struct DivideConquerRec {
    std::uint64_t a = 2;
    std::uint64_t b = 2;
    ExtPos c = 1;
    HExpr h;
};

struct LinearRec {
    ExtPos c = 1;
    HExpr h;
};

using Schema = std::variant<DivideConquerRec, LinearRec>;

inline DivideConquerRec make_divide_conquer(std::uint64_t a, std::uint64_t b, const Rational& c, HExpr h) {
    if (a < 2 || b < 2) {
        throw std::invalid_argument("divide and conquer needs integers a, b > 1");
    }
    return DivideConquerRec{a, b, ExtPos(c), std::move(h)};
}

inline LinearRec make_linear(const Rational& c, HExpr h) { return LinearRec{ExtPos(c), std::move(h)}; }

inline bool is_divide_conquer(const Schema& s) { return std::holds_alternative<DivideConquerRec>(s); }

inline const ExtPos& base_cost(const Schema& s) {
    return std::visit([](const auto& r) -> const ExtPos& { return r.c; }, s);
}

inline const HExpr& cost_term(const Schema& s) {
    return std::visit([](const auto& r) -> const HExpr& { return r.h; }, s);
}

/// Index bound of the materialized solution: b^levels or n_max.
inline std::uint64_t index_limit(const Schema& s, const Horizon& horizon) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return grid_limit(dc->b, horizon.n_max);
    }
    return horizon.n_max;
}

/// Indices n > 1 at which the recurrence evaluates h, in increasing order.
inline std::vector<std::uint64_t> evaluated_indices(const Schema& s, const Horizon& horizon) {
    std::vector<std::uint64_t> out;
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        const std::uint64_t limit = index_limit(s, horizon);
        for (std::uint64_t k = dc->b; k <= limit; k *= dc->b) {
            out.push_back(k);
            if (k > limit / dc->b) break;
        }
        return out;
    }
    for (std::uint64_t n = 2; n <= horizon.n_max; ++n) out.push_back(n);
    return out;
}

/**
 * The cost word z with z_k = h(k) at every index the functional reads;
 * other positions hold inf. Fails if h is not positive and finite there.
 */
inline Word cost_word(const Schema& s, std::uint64_t limit, const Precision& prec = {}) {
    const HExpr& h = cost_term(s);
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        std::map<std::uint64_t, Letter> z;
        for (std::uint64_t k = dc->b; k <= limit; k *= dc->b) {
            z.emplace(k, h.letter_at(k, prec));
            if (k > limit / dc->b) break;
        }
        return Word::sparse(std::move(z), std::nullopt, limit, limit);
    }
    std::vector<Letter> z;
    z.reserve(limit);
    z.push_back(Letter::infinity());
    for (std::uint64_t n = 2; n <= limit; ++n) {
        z.push_back(h.letter_at(n, prec));
    }
    return Word::truncated(std::move(z));
}

/// Checks 0 < h(n) < inf on the indices the recurrence actually evaluates.
inline void validate(const Schema& s, const Horizon& horizon, const Precision& prec = {}) {
    (void)cost_word(s, index_limit(s, horizon), prec);
}

namespace detail {

inline void require_base(const Word& x, const ExtPos& c, const char* where) {
    if (x.materialized() < 1 || !x.at(1).is_exact() || !(x.at(1).exact() == c)) {
        throw DomainError(std::string(where) + ": word must start with c = " + c.str());
    }
    if (x.length() && *x.length() < 2) {
        throw DomainError(std::string(where) + ": word must have length at least 2");
    }
}

inline void require_grid_shape(const Word& x, std::uint64_t b) {
    const auto off_grid_finite = [&](std::uint64_t k, const Letter& v) {
        return k >= 2 && !on_grid(k, b) && !v.is_infinite();
    };
    if (const auto* s = x.sparse_entries()) {
        for (const auto& [k, v] : *s) {
            if (off_grid_finite(k, v)) {
                throw DomainError("theta: off-grid index " + std::to_string(k) + " must hold inf");
            }
        }
        return;
    }
    for (std::uint64_t k = 2; k <= x.materialized(); ++k) {
        if (off_grid_finite(k, x.at(k))) {
            throw DomainError("theta: off-grid index " + std::to_string(k) + " must hold inf");
        }
    }
}

/// Length of theta(x) for a finite x of length l: off-grid positions reach l + 1, grid positions b l.
inline std::uint64_t theta_length(std::uint64_t l, std::uint64_t b) {
    std::uint64_t k = l + 2;
    while (on_grid(k, b) && k <= b * l) ++k;
    return k - 1;
}

}  // namespace detail

/**
 * Theta_{a,b}^z: (theta x)_1 = c, inf off the grid, a x_{k/b} + z_k at
 * grid points k with k/b inside x. `z` must cover every grid index of the output.
 */
inline Word apply_theta(const DivideConquerRec& rec, const Word& z, const Word& x) {
    detail::require_base(x, rec.c, "theta");
    detail::require_grid_shape(x, rec.b);
    const std::uint64_t out_limit =
        x.length() ? detail::theta_length(*x.length(), rec.b) : x.materialized();
    std::map<std::uint64_t, Letter> entries;
    entries.emplace(1, Letter(rec.c));
    const Rational a(static_cast<unsigned long>(rec.a));
    for (std::uint64_t k = rec.b; k <= out_limit; k *= rec.b) {
        const Letter prev = x.at(k / rec.b);
        if (!prev.is_infinite()) {
            entries.emplace(k, scale(a, prev) + z.at(k));
        }
        if (k > out_limit / rec.b) break;
    }
    if (x.length()) {
        return Word::sparse(std::move(entries), out_limit, out_limit, out_limit);
    }
    return Word::sparse(std::move(entries), std::nullopt, out_limit, x.bound_exponent());
}

inline Word apply_theta(const DivideConquerRec& rec, const Word& x, const Precision& prec = {}) {
    const std::uint64_t need = x.length() ? detail::theta_length(*x.length(), rec.b) : x.materialized();
    return apply_theta(rec, cost_word(rec, need, prec), x);
}

/// Psi^z: (psi x)_1 = c and (psi x)_k = x_{k-1} + z_k for 2 <= k <= l(x).
inline Word apply_psi(const LinearRec& rec, const Word& z, const Word& x) {
    detail::require_base(x, rec.c, "psi");
    const std::uint64_t m = x.materialized();
    std::vector<Letter> out;
    out.reserve(m);
    out.push_back(Letter(rec.c));
    for (std::uint64_t k = 2; k <= m; ++k) {
        out.push_back(x.at(k - 1) + z.at(k));
    }
    return x.length() ? Word::finite(std::move(out)) : Word::truncated(std::move(out));
}

inline Word apply_psi(const LinearRec& rec, const Word& x, const Precision& prec = {}) {
    return apply_psi(rec, cost_word(rec, x.materialized(), prec), x);
}

/// The functional associated with a schema, with a precomputed cost word.
inline Word apply_functional(const Schema& s, const Word& z, const Word& x) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return apply_theta(*dc, z, x);
    }
    return apply_psi(std::get<LinearRec>(s), z, x);
}

inline Word apply_functional(const Schema& s, const Word& x, const Precision& prec = {}) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return apply_theta(*dc, x, prec);
    }
    return apply_psi(std::get<LinearRec>(s), x, prec);
}

struct Solution {
    Word word;
    Schema schema;
    Horizon horizon;
    DistanceValue residual;
    std::size_t iterations = 0;

    Letter at(std::uint64_t n) const { return word.at(n); }
};

/// Forward substitution T(1) = c, then every evaluated index in order.
inline Solution oracle_solve(const Schema& s, const Horizon& horizon, const Precision& prec = {}) {
    const HExpr& h = cost_term(s);
    const ExtPos& c = base_cost(s);
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        const std::uint64_t limit = index_limit(s, horizon);
        std::map<std::uint64_t, Letter> t;
        t.emplace(1, Letter(c));
        Letter prev(c);
        const Rational a(static_cast<unsigned long>(dc->a));
        for (const auto n : evaluated_indices(s, horizon)) {
            prev = scale(a, prev) + h.letter_at(n, prec);
            t.emplace(n, prev);
        }
        return Solution{Word::sparse(std::move(t), std::nullopt, limit, horizon.n_max), s, horizon,
                        DistanceValue{}, 0};
    }
    std::vector<Letter> t;
    t.reserve(horizon.n_max);
    t.push_back(Letter(c));
    for (std::uint64_t n = 2; n <= horizon.n_max; ++n) {
        t.push_back(t.back() + h.letter_at(n, prec));
    }
    return Solution{Word::truncated(std::move(t)), s, horizon, DistanceValue{}, 0};
}

/**
 * Infinite seed word in the functional's domain: (c, inf, inf, ...) for
 * divide and conquer and (c, c + h(2), inf, ...) for linear recurrences.
 */
inline Word seed_word(const Schema& s, const Horizon& horizon, const Word& z) {
    const ExtPos& c = base_cost(s);
    const std::uint64_t limit = index_limit(s, horizon);
    if (is_divide_conquer(s)) {
        std::map<std::uint64_t, Letter> e;
        e.emplace(1, Letter(c));
        return Word::sparse(std::move(e), std::nullopt, limit, horizon.n_max);
    }
    std::vector<Letter> w(limit, Letter::infinity());
    w[0] = Letter(c);
    w[1] = Letter(c) + z.at(2);
    return Word::truncated(std::move(w));
}

/**
 * Iterates the schema's functional from the seed until successive iterates
 * agree under q_B through the horizon. The functional halves q_B, so at most
 * horizon + 1 applications are needed; the loop gives up after horizon + 4.
 */
inline Solution fixpoint_solve(const Schema& s, const Horizon& horizon, const Precision& prec = {}) {
    const std::uint64_t limit = index_limit(s, horizon);
    const Word z = cost_word(s, limit, prec);
    Word x = seed_word(s, horizon, z);
    for (std::size_t it = 1; it <= horizon.n_max + 4; ++it) {
        Word next = apply_functional(s, z, x);
        // Test the length first: an unsaturated 2^{-l} can be an enormous rational on deep grids.
        if (dominated_prefix_len(x, next, prec).saturated) {
            const DistanceValue residual = baire_pqm(x, next, prec);
            return Solution{std::move(next), s, horizon, residual, it};
        }
        x = std::move(next);
    }
    throw std::runtime_error("fixed-point iteration did not settle within horizon + 4 steps");
}

enum class ContractionMetric { BaireQ, BaireP, ComplexityTruncated };

inline std::string to_string(ContractionMetric m) {
    switch (m) {
        case ContractionMetric::BaireQ: return "q_B";
        case ContractionMetric::BaireP: return "p_B";
        case ContractionMetric::ComplexityTruncated: return "d_C";
    }
    return "?";
}

struct ContractionMeasurement {
    Rational sup_ratio;
    std::size_t used = 0;
    std::size_t skipped = 0;
};

/**
 * sup over the sample of dist(F x, F y) / dist(x, y), skipping pairs whose
 * distance is zero or only horizon-bounded. `series_terms` truncates d_C.
 */
inline ContractionMeasurement measure_contraction(const Schema& s,
                                                  std::span<const std::pair<Word, Word>> pairs,
                                                  ContractionMetric metric, std::uint64_t series_terms = 0,
                                                  const Precision& prec = {}) {
    ContractionMeasurement out;
    const auto record = [&out](const Rational& ratio) {
        if (out.used == 0 || ratio > out.sup_ratio) {
            out.sup_ratio = ratio;
        }
        ++out.used;
    };
    if (metric == ContractionMetric::ComplexityTruncated) {
        if (series_terms == 0) {
            throw std::invalid_argument("d_C contraction needs a series truncation");
        }
        const WordDistance dist = d_complexity_truncated(series_terms);
        for (const auto& [x, y] : pairs) {
            const DistanceValue before = dist(x, y);
            if (before.horizon_bound || sgn(before.value.lo()) == 0) {
                ++out.skipped;
                continue;
            }
            const DistanceValue after = dist(apply_functional(s, x, prec), apply_functional(s, y, prec));
            record(after.value.hi() / before.value.lo());
        }
    } else {
        // Baire distances are 2^{-l}; compare lengths so that a saturated image
        // contributes its true bound 2^{-materialized} rather than the coarser
        // reporting bound.
        const auto len = [metric, &prec](const Word& x, const Word& y) {
            return metric == ContractionMetric::BaireP ? common_prefix_len(x, y, prec)
                                                       : dominated_prefix_len(x, y, prec);
        };
        for (const auto& [x, y] : pairs) {
            const ExtNat before = len(x, y);
            if (before.saturated || before.infinite) {
                ++out.skipped;
                continue;
            }
            const ExtNat after = len(apply_functional(s, x, prec), apply_functional(s, y, prec));
            if (after.infinite) {
                record(Rational(0));
            } else if (after.value >= before.value) {
                record(pow2neg(after.value - before.value));
            } else {
                record(Rational(pow2neg(after.value) / pow2neg(before.value)));
            }
        }
    }
    if (out.used == 0) {
        throw std::invalid_argument("contraction sample has no pair with a positive, exact distance");
    }
    return out;
}

}  // namespace baire

#endif
