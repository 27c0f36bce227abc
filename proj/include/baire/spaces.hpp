#ifndef BAIRE_SPACES_HPP
#define BAIRE_SPACES_HPP

/**
 * @file spaces.hpp
 *
 * Distance constructions on words and on (0, inf]: the Baire partial metric
 * and partial quasi-metric, their induced quasi-metrics, u_{-1}, the
 * complexity quasi-metric d_C and partial metric p_C, plus exhaustive axiom
 * checking over a finite sample.
 */

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baire/numerics.hpp"
#include "baire/words.hpp"

namespace baire {

/**
 * A distance value. With `horizon_bound` set the true value is only known
 * to lie below `value.hi()`, certified by a scan that reached the horizon.
 */
struct DistanceValue {
    Enclosure value;
    bool horizon_bound = false;

    const Rational& upper() const { return value.hi(); }
    bool exact() const { return value.exact() && !horizon_bound; }

    bool operator==(const DistanceValue&) const = default;
};

inline std::string to_string(const DistanceValue& d) {
    if (d.horizon_bound) {
        return "<= " + to_string(d.value.hi());
    }
    return to_string(d.value);
}

using WordDistance = std::function<DistanceValue(const Word&, const Word&)>;

namespace detail {

inline DistanceValue dyadic_distance(const ExtNat& l, const Word& x, const Word& y) {
    if (l.infinite) {
        return {Enclosure(Rational(0)), false};
    }
    if (l.saturated) {
        const std::uint64_t e = std::min({l.value, x.bound_exponent(), y.bound_exponent()});
        return {Enclosure(Rational(0), pow2neg(e)), true};
    }
    return {Enclosure(pow2neg(l.value)), false};
}

}  // namespace detail

/// Baire partial metric p_B(x, y) = 2^{-l(x, y)}.
inline DistanceValue baire_pm(const Word& x, const Word& y, const Precision& prec = {}) {
    return detail::dyadic_distance(common_prefix_len(x, y, prec), x, y);
}

/// Baire partial quasi-metric q_B(x, y) = 2^{-l_<=(x, y)}.
inline DistanceValue baire_pqm(const Word& x, const Word& y, const Precision& prec = {}) {
    return detail::dyadic_distance(dominated_prefix_len(x, y, prec), x, y);
}

/// d(x, y) = p(x, y) - s(x), where s(x) is the self-distance p(x, x).
inline WordDistance derive_quasi(WordDistance p, std::function<DistanceValue(const Word&)> self) {
    return [p = std::move(p), self = std::move(self)](const Word& x, const Word& y) {
        const DistanceValue pxy = p(x, y);
        const DistanceValue pxx = self(x);
        // Distances of a partial (quasi-)metric never fall below the self-distance.
        const Enclosure diff = pxy.value - pxx.value;
        return DistanceValue{max(diff, Enclosure(Rational(0))), pxy.horizon_bound};
    };
}

inline WordDistance derive_quasi(WordDistance p) {
    auto self = [p](const Word& x) { return p(x, x); };
    return derive_quasi(std::move(p), std::move(self));
}

/// d^s(x, y) = max(d(x, y), d(y, x)).
template <typename T>
std::function<DistanceValue(const T&, const T&)> symmetrize(std::function<DistanceValue(const T&, const T&)> d) {
    return [d = std::move(d)](const T& x, const T& y) {
        const DistanceValue a = d(x, y);
        const DistanceValue b = d(y, x);
        return DistanceValue{max(a.value, b.value), a.horizon_bound || b.horizon_bound};
    };
}

inline WordDistance d_baire_pm(const Precision& prec = {}) {
    return derive_quasi([prec](const Word& x, const Word& y) { return baire_pm(x, y, prec); });
}

inline WordDistance d_baire_pqm(const Precision& prec = {}) {
    return derive_quasi([prec](const Word& x, const Word& y) { return baire_pqm(x, y, prec); });
}

/// u_{-1}(x, y) = max(1/y - 1/x, 0) with 1/inf = 0.
inline DistanceValue u_minus_one(const ExtPos& x, const ExtPos& y) {
    Rational v = reciprocal(y) - reciprocal(x);
    if (sgn(v) < 0) {
        v = 0;
    }
    return {Enclosure(v), false};
}

/**
 * A truncated series sum_{n <= N} together with a bound on the omitted
 * tail, kept apart so the partial sum can be compared exactly.
 */
struct SeriesValue {
    Rational partial_sum;
    Rational tail_bound;
    std::uint64_t terms = 0;

    DistanceValue distance() const {
        return {Enclosure(partial_sum, Rational(partial_sum + tail_bound)), false};
    }

    bool operator==(const SeriesValue&) const = default;
};

namespace detail {

/// Calls fn(n) for every n <= N where either word can hold a finite letter.
template <typename Fn>
void for_each_finite_index(const Word& f, const Word& g, std::uint64_t N, Fn&& fn) {
    const auto* fs = f.sparse_entries();
    const auto* gs = g.sparse_entries();
    if (fs != nullptr && gs != nullptr) {
        std::vector<std::uint64_t> keys;
        for (const auto& [k, v] : *fs) if (k <= N) keys.push_back(k);
        for (const auto& [k, v] : *gs) if (k <= N) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (const auto k : keys) fn(k);
        return;
    }
    for (std::uint64_t n = 1; n <= N; ++n) fn(n);
}

inline Rational exact_reciprocal(const Letter& a) {
    if (!a.is_exact()) {
        throw DomainError("complexity distances need exactly representable running times");
    }
    return reciprocal(a.exact());
}

/// Largest reciprocal over every materialized letter of w.
inline Rational max_reciprocal(const Word& w) {
    Rational best = 0;
    if (const auto* s = w.sparse_entries()) {
        for (const auto& [k, v] : *s) best = std::max(best, exact_reciprocal(v));
        return best;
    }
    for (std::uint64_t k = 1; k <= w.materialized(); ++k) best = std::max(best, exact_reciprocal(w.at(k)));
    return best;
}

inline void require_terms(const Word& w, std::uint64_t N) {
    if (w.materialized() < N) {
        throw std::invalid_argument("complexity series needs " + std::to_string(N) +
                                    " materialized values, word has " + std::to_string(w.materialized()));
    }
}

}  // namespace detail

/**
 * d_C(f, g) = sum_n 2^{-n} max(1/g(n) - 1/f(n), 0), summed exactly for
 * n <= N. The tail is bounded by 2^{-N} * rho where rho bounds 1/g(n) for
 * n > N; by default rho is the largest reciprocal among the materialized
 * letters, which is sound for running times that never drop below their
 * smallest materialized value.
 */
inline SeriesValue d_complexity(const Word& f, const Word& g, std::uint64_t N,
                                std::optional<Rational> reciprocal_bound = std::nullopt) {
    detail::require_terms(f, N);
    detail::require_terms(g, N);
    SeriesValue out;
    out.terms = N;
    detail::for_each_finite_index(f, g, N, [&](std::uint64_t n) {
        Rational term = detail::exact_reciprocal(g.at(n)) - detail::exact_reciprocal(f.at(n));
        if (sgn(term) > 0) {
            out.partial_sum += term * pow2neg(n);
        }
    });
    const Rational rho = reciprocal_bound ? *reciprocal_bound : detail::max_reciprocal(g);
    out.tail_bound = rho * pow2neg(N);
    return out;
}

/// p_C(f, g) = sum_n 2^{-n} max(1/f(n), 1/g(n)), truncated like d_complexity.
inline SeriesValue p_complexity(const Word& f, const Word& g, std::uint64_t N,
                                std::optional<Rational> reciprocal_bound = std::nullopt) {
    detail::require_terms(f, N);
    detail::require_terms(g, N);
    SeriesValue out;
    out.terms = N;
    detail::for_each_finite_index(f, g, N, [&](std::uint64_t n) {
        const Rational term = std::max(detail::exact_reciprocal(f.at(n)), detail::exact_reciprocal(g.at(n)));
        out.partial_sum += term * pow2neg(n);
    });
    const Rational rho = reciprocal_bound
                             ? *reciprocal_bound
                             : std::max(detail::max_reciprocal(f), detail::max_reciprocal(g));
    out.tail_bound = rho * pow2neg(N);
    return out;
}

/// Truncated d_C as a word distance (partial sum only).
inline WordDistance d_complexity_truncated(std::uint64_t N) {
    return [N](const Word& f, const Word& g) {
        return DistanceValue{Enclosure(d_complexity(f, g, N, Rational(0)).partial_sum), false};
    };
}

inline WordDistance p_complexity_truncated(std::uint64_t N) {
    return [N](const Word& f, const Word& g) {
        return DistanceValue{Enclosure(p_complexity(f, g, N, Rational(0)).partial_sum), false};
    };
}

// ---------------------------------------------------------------------------
// Axiom checking

enum class AxiomSystem { QuasiMetric, PartialMetric, PartialQuasiMetric };

inline std::string to_string(AxiomSystem s) {
    switch (s) {
        case AxiomSystem::QuasiMetric: return "quasi-metric";
        case AxiomSystem::PartialMetric: return "partial metric";
        case AxiomSystem::PartialQuasiMetric: return "partial quasi-metric";
    }
    return "?";
}

struct AxiomViolation {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    std::string axiom;
    std::size_t i = none;
    std::size_t j = none;
    std::size_t k = none;

    bool operator==(const AxiomViolation&) const = default;
};

struct AxiomReport {
    AxiomSystem system = AxiomSystem::QuasiMetric;
    std::size_t samples = 0;
    std::vector<AxiomViolation> violations;

    bool pass() const { return violations.empty(); }

    bool operator==(const AxiomReport&) const = default;
};

namespace detail {

inline bool decided(Tri t, const char* what) {
    if (t == Tri::Unknown) {
        throw PrecisionError(std::string("axiom comparison undecided: ") + what);
    }
    return t == Tri::True;
}

inline bool is_zero(const Enclosure& e) { return decided(equal(e, Enclosure(Rational(0))), "zero test"); }
inline bool same(const Enclosure& a, const Enclosure& b) { return decided(equal(a, b), "equality"); }
inline bool le(const Enclosure& a, const Enclosure& b) { return decided(less_equal(a, b), "inequality"); }

}  // namespace detail

/**
 * Evaluates the chosen axiom schema on every ordered pair and triple of
 * `sample` and returns each violation with its witness indices.
 */
template <typename T, typename Dist, typename Same>
    requires std::predicate<Same&, const T&, const T&>
AxiomReport check_axioms(AxiomSystem system, Dist&& d, std::span<const T> sample, Same&& same_point) {
    using detail::is_zero;
    using detail::le;
    using detail::same;

    const std::size_t n = sample.size();
    std::vector<std::vector<Enclosure>> D(n, std::vector<Enclosure>(n));
    std::vector<std::vector<char>> eq(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            D[i][j] = d(sample[i], sample[j]).value;
            eq[i][j] = same_point(sample[i], sample[j]) ? 1 : 0;
        }
    }

    AxiomReport report;
    report.system = system;
    report.samples = n;
    auto flag = [&](const char* axiom, std::size_t i, std::size_t j, std::size_t k = AxiomViolation::none) {
        report.violations.push_back({axiom, i, j, k});
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(D[i][j].lo()) < 0) {
                flag("nonnegativity", i, j);
            }
            switch (system) {
                case AxiomSystem::QuasiMetric:
                    if ((is_zero(D[i][j]) && is_zero(D[j][i])) != static_cast<bool>(eq[i][j])) {
                        flag("qm.i separation", i, j);
                    }
                    break;
                case AxiomSystem::PartialMetric:
                    if ((same(D[i][i], D[i][j]) && same(D[i][j], D[j][j])) != static_cast<bool>(eq[i][j])) {
                        flag("pm.i separation", i, j);
                    }
                    if (!le(D[i][i], D[i][j])) {
                        flag("pm.ii small self-distance", i, j);
                    }
                    if (!same(D[i][j], D[j][i])) {
                        flag("pm.iii symmetry", i, j);
                    }
                    break;
                case AxiomSystem::PartialQuasiMetric:
                    if (!le(D[i][i], D[i][j])) {
                        flag("pqm.i left self-distance", i, j);
                    }
                    if (!le(D[i][i], D[j][i])) {
                        flag("pqm.ii right self-distance", i, j);
                    }
                    if ((same(D[i][i], D[i][j]) && same(D[j][j], D[j][i])) != static_cast<bool>(eq[i][j])) {
                        flag("pqm.iv separation", i, j);
                    }
                    break;
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (system == AxiomSystem::QuasiMetric) {
                    if (!le(D[i][j], D[i][k] + D[k][j])) {
                        flag("qm.ii triangle", i, j, k);
                    }
                } else if (!le(D[i][j], D[i][k] + D[k][j] - D[k][k])) {
                    flag(system == AxiomSystem::PartialMetric ? "pm.iv triangle" : "pqm.iii triangle", i, j, k);
                }
            }
        }
    }
    return report;
}

inline AxiomReport check_axioms(AxiomSystem system, const WordDistance& d, std::span<const Word> sample,
                                const Precision& prec = {}) {
    return check_axioms<Word>(system, d, sample,
                              [&](const Word& x, const Word& y) { return same_word(x, y, prec); });
}

}  // namespace baire

#endif
