#ifndef BAIRE_SAMPLING_HPP
#define BAIRE_SAMPLING_HPP

/**
 * @file sampling.hpp
 *
 * Seeded generators for words, word pairs and schemas. The mapping from
 * engine output to values is done here rather than through the standard
 * distributions, whose results differ between library implementations.
 */

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "baire/hexpr.hpp"
#include "baire/letter.hpp"
#include "baire/numerics.hpp"
#include "baire/recurrences.hpp"
#include "baire/words.hpp"

namespace baire {

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    /// Integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool coin(std::uint64_t one_in = 2) { return below(one_in) == 0; }

    /// Positive rational p/q with 1 <= p <= max_num, 1 <= q <= max_den.
    Rational positive(std::uint64_t max_num = 20, std::uint64_t max_den = 6) {
        Rational q(static_cast<unsigned long>(between(1, max_num)), static_cast<unsigned long>(between(1, max_den)));
        q.canonicalize();
        return q;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Letter from {1, 2, 3, inf}; a small alphabet keeps prefixes overlapping.
inline Letter small_letter(SampleRng& rng) {
    const auto v = rng.below(4);
    return v == 3 ? Letter::infinity() : Letter(Rational(static_cast<unsigned long>(v + 1)));
}

/// Finite word of length 1..max_len over the small alphabet.
inline Word random_finite_word(SampleRng& rng, std::uint64_t max_len = 4) {
    const auto len = rng.between(1, max_len);
    std::vector<Letter> w;
    for (std::uint64_t k = 0; k < len; ++k) w.push_back(small_letter(rng));
    return Word::finite(std::move(w));
}

inline std::vector<Word> random_finite_words(std::uint64_t seed, std::size_t count, std::uint64_t max_len = 4) {
    SampleRng rng(seed);
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_finite_word(rng, max_len));
    return out;
}

/// Finite word of exactly `len` positive rational letters, for complexity distances.
inline Word random_exact_word(SampleRng& rng, std::uint64_t len) {
    std::vector<Letter> w;
    for (std::uint64_t k = 0; k < len; ++k) w.push_back(Letter(rng.positive()));
    return Word::finite(std::move(w));
}

/// Random member of the schema's domain, materialized through the horizon.
inline Word random_domain_word(SampleRng& rng, const Schema& s, const Horizon& horizon, bool allow_infinity = true) {
    const ExtPos& c = base_cost(s);
    const auto letter = [&]() { return allow_infinity && rng.coin(8) ? Letter::infinity() : Letter(rng.positive()); };
    if (is_divide_conquer(s)) {
        std::map<std::uint64_t, Letter> e;
        e.emplace(1, Letter(c));
        for (const auto k : evaluated_indices(s, horizon)) e.emplace(k, letter());
        return Word::sparse(std::move(e), std::nullopt, index_limit(s, horizon), horizon.n_max);
    }
    std::vector<Letter> w;
    w.push_back(Letter(c));
    for (std::uint64_t n = 2; n <= horizon.n_max; ++n) w.push_back(letter());
    return Word::truncated(std::move(w));
}

/// Copy of x with the letter at `index` replaced.
inline Word with_letter(const Word& x, std::uint64_t index, const Letter& v) {
    if (const auto* s = x.sparse_entries()) {
        auto e = *s;
        if (v.is_infinite()) {
            e.erase(index);
        } else {
            e.insert_or_assign(index, v);
        }
        return Word::sparse(std::move(e), x.length(), x.materialized(), x.bound_exponent());
    }
    std::vector<Letter> w;
    for (std::uint64_t k = 1; k <= x.materialized(); ++k) w.push_back(k == index ? v : x.at(k));
    return x.is_infinite() ? Word::truncated(std::move(w)) : Word::finite(std::move(w));
}

/**
 * A domain pair (x, y) where y agrees with x up to a random evaluated index
 * and is redrawn from there on, so both distances are usually exact.
 */
inline std::pair<Word, Word> random_domain_pair(SampleRng& rng, const Schema& s, const Horizon& horizon) {
    const Word x = random_domain_word(rng, s, horizon);
    const auto idx = evaluated_indices(s, horizon);
    const auto from = rng.below(idx.size());
    Word y = x;
    for (std::size_t i = from; i < idx.size(); ++i) {
        if (i == from || rng.coin(3)) {
            y = with_letter(y, idx[i], rng.coin(8) ? Letter::infinity() : Letter(rng.positive()));
        }
    }
    return {x, y};
}

inline std::vector<std::pair<Word, Word>> random_domain_pairs(std::uint64_t seed, const Schema& s,
                                                              const Horizon& horizon, std::size_t count) {
    SampleRng rng(seed);
    std::vector<std::pair<Word, Word>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_domain_pair(rng, s, horizon));
    return out;
}

/// h(n) = p + q n + r n^2 with p > 0 and q, r >= 0.
inline HExpr random_cost(SampleRng& rng) {
    const HExpr n = HExpr::variable();
    HExpr h = HExpr::literal(rng.positive());
    if (!rng.coin(3)) h = h + HExpr::literal(rng.positive()) * n;
    if (rng.coin(3)) h = h + HExpr::literal(rng.positive()) * HExpr::power(n, 2);
    return h;
}

/// Random rational schema without log2; half divide and conquer, half linear.
inline Schema random_schema(SampleRng& rng) {
    const Rational c = rng.positive();
    if (rng.coin()) {
        return make_divide_conquer(rng.between(2, 4), rng.between(2, 3), c, random_cost(rng));
    }
    return make_linear(c, random_cost(rng));
}

}  // namespace baire

#endif
