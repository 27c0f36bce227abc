#ifndef BAIRE_WORDS_HPP
#define BAIRE_WORDS_HPP

/**
 * @file words.hpp
 *
 * Finite and infinite words over the ordered alphabet (0, inf], indexed
 * from 1. Infinite words are materialized up to a finite horizon; every
 * length that runs into that horizon is reported as saturated.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "baire/letter.hpp"
#include "baire/numerics.hpp"

namespace baire {

/**
 * Materialization depth. For index-dense words `n_max` counts indices; for
 * grid words it counts levels b, b^2, ..., b^{n_max}.
 */
struct Horizon {
    static constexpr std::uint64_t default_dense = 64;
    static constexpr std::uint64_t default_grid_levels = 20;

    std::uint64_t n_max = default_dense;

    Horizon() = default;
    explicit Horizon(std::uint64_t n) : n_max(n) {
        if (n < 2) {
            throw std::invalid_argument("horizon must be at least 2");
        }
    }
};

/// b^levels, rejecting grids whose index range would not fit in 62 bits.
inline std::uint64_t grid_limit(std::uint64_t b, std::uint64_t levels) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < levels; ++i) {
        if (out > (std::uint64_t{1} << 62) / b) {
            throw std::invalid_argument("grid horizon b^levels exceeds the supported index range");
        }
        out *= b;
    }
    return out;
}

/// True when n = b^k for some k >= 1.
inline bool on_grid(std::uint64_t n, std::uint64_t b) {
    if (n < b) {
        return false;
    }
    while (n % b == 0) {
        n /= b;
    }
    return n == 1;
}

class Word {
public:
    enum class Backing { Dense, Sparse, Rule };
    using Rule = std::function<Letter(std::uint64_t)>;

    /// A finite word x_1 ... x_n.
    static Word finite(std::vector<Letter> letters) {
        if (letters.empty()) {
            throw std::invalid_argument("words have length at least 1");
        }
        Word w;
        w.length_ = letters.size();
        w.limit_ = letters.size();
        w.exponent_ = letters.size();
        w.store_ = std::make_shared<const Store>(std::move(letters));
        return w;
    }

    /// The first `letters.size()` entries of an infinite word.
    static Word truncated(std::vector<Letter> letters) {
        Word w = finite(std::move(letters));
        w.length_.reset();
        return w;
    }

    /**
     * Sparse backing: unmapped indices up to the length read as inf.
     * `length` of nullopt means an infinite word materialized through `limit`;
     * `exponent` is the horizon used for certified distance bounds.
     */
    static Word sparse(std::map<std::uint64_t, Letter> entries, std::optional<std::uint64_t> length,
                       std::uint64_t limit, std::uint64_t exponent) {
        Word w;
        w.length_ = length;
        w.limit_ = length ? *length : limit;
        w.exponent_ = length ? *length : std::min(exponent, limit);
        if (w.limit_ < 1) {
            throw std::invalid_argument("words have length at least 1");
        }
        if (!entries.empty() && (entries.begin()->first < 1 || entries.rbegin()->first > w.limit_)) {
            throw std::out_of_range("sparse entry outside the materialized range");
        }
        w.store_ = std::make_shared<const Store>(std::move(entries));
        return w;
    }

    /// Infinite word given by a pure evaluator, materialized through `limit`.
    static Word rule(Rule eval, std::uint64_t limit) {
        if (limit < 1) {
            throw std::invalid_argument("horizon must be positive");
        }
        Word w;
        w.limit_ = limit;
        w.exponent_ = limit;
        w.store_ = std::make_shared<const Store>(std::move(eval));
        return w;
    }

    Backing backing() const { return static_cast<Backing>(store_->index()); }

    /// l(x); nullopt stands for inf.
    std::optional<std::uint64_t> length() const { return length_; }
    bool is_infinite() const { return !length_.has_value(); }

    /// Number of letters actually available: min(l(x), horizon).
    std::uint64_t materialized() const { return limit_; }

    /// Exponent e of the certified bound 2^{-e} reported when a scan saturates on this word.
    std::uint64_t bound_exponent() const { return exponent_; }

    Letter at(std::uint64_t k) const {
        if (k < 1 || k > limit_) {
            throw std::out_of_range("word index " + std::to_string(k) + " outside 1.." + std::to_string(limit_));
        }
        switch (backing()) {
            case Backing::Dense:
                return std::get<0>(*store_)[k - 1];
            case Backing::Sparse: {
                const auto& m = std::get<1>(*store_);
                const auto it = m.find(k);
                return it == m.end() ? Letter::infinity() : it->second;
            }
            case Backing::Rule:
                return std::get<2>(*store_)(k);
        }
        throw std::logic_error("unreachable");
    }

    const std::map<std::uint64_t, Letter>* sparse_entries() const {
        return backing() == Backing::Sparse ? &std::get<1>(*store_) : nullptr;
    }

    /// Same letters in a dense store; infinite words stay infinite.
    Word densified() const {
        std::vector<Letter> out;
        out.reserve(limit_);
        for (std::uint64_t k = 1; k <= limit_; ++k) {
            out.push_back(at(k));
        }
        Word w = finite(std::move(out));
        w.length_ = length_;
        w.exponent_ = exponent_;
        return w;
    }

    std::string str(std::uint64_t max_letters = 16) const {
        std::string out = "(";
        const auto n = std::min(limit_, max_letters);
        for (std::uint64_t k = 1; k <= n; ++k) {
            out += (k > 1 ? ", " : "") + at(k).str();
        }
        if (limit_ > n || is_infinite()) {
            out += ", ...";
        }
        return out + ")";
    }

private:
    using Store = std::variant<std::vector<Letter>, std::map<std::uint64_t, Letter>, Rule>;

    Word() = default;

    std::optional<std::uint64_t> length_;
    std::uint64_t limit_ = 0;
    std::uint64_t exponent_ = 0;
    std::shared_ptr<const Store> store_;
};

namespace detail {

/**
 * Length of the longest initial run on which `agree(x_k, y_k)` holds,
 * saturating when the scan is cut by a horizon rather than a true end.
 * `agree` must hold for (inf, inf).
 */
template <typename Agree>
ExtNat initial_run(const Word& x, const Word& y, Agree&& agree) {
    const std::uint64_t n = std::min(x.materialized(), y.materialized());
    const auto* xs = x.sparse_entries();
    const auto* ys = y.sparse_entries();
    if (xs != nullptr && ys != nullptr) {
        // Off both key sets every letter is inf, so only mapped indices can disagree.
        auto ix = xs->begin();
        auto iy = ys->begin();
        while (true) {
            std::uint64_t k = std::numeric_limits<std::uint64_t>::max();
            if (ix != xs->end()) k = std::min(k, ix->first);
            if (iy != ys->end()) k = std::min(k, iy->first);
            if (k > n) {
                break;
            }
            if (!agree(x.at(k), y.at(k))) {
                return ExtNat::finite(k - 1);
            }
            if (ix != xs->end() && ix->first == k) ++ix;
            if (iy != ys->end() && iy->first == k) ++iy;
        }
    } else {
        for (std::uint64_t k = 1; k <= n; ++k) {
            if (!agree(x.at(k), y.at(k))) {
                return ExtNat::finite(k - 1);
            }
        }
    }
    const bool genuine_end = (x.length() && *x.length() == n) || (y.length() && *y.length() == n);
    return genuine_end ? ExtNat::finite(n) : ExtNat::at_horizon(n);
}

}  // namespace detail

/// l(x, y): length of the longest common prefix.
inline ExtNat common_prefix_len(const Word& x, const Word& y, const Precision& prec = {}) {
    return detail::initial_run(x, y, [&](const Letter& a, const Letter& b) { return eq(a, b, prec); });
}

/// l_<=(x, y): length of the longest prefix on which x is pointwise below y.
inline ExtNat dominated_prefix_len(const Word& x, const Word& y, const Precision& prec = {}) {
    return detail::initial_run(x, y, [&](const Letter& a, const Letter& b) { return leq(a, b, prec); });
}

/// l(x) as an ExtNat: infinite words report saturation at their horizon.
inline ExtNat word_length(const Word& x) {
    if (x.length()) {
        return ExtNat::finite(*x.length());
    }
    return ExtNat::at_horizon(x.materialized());
}

/// A boolean verdict together with whether it rests on a horizon-truncated scan.
struct HorizonVerdict {
    bool holds = false;
    bool saturated = false;
    explicit operator bool() const { return holds; }
};

/// x is a prefix of y.
inline HorizonVerdict is_prefix(const Word& x, const Word& y, const Precision& prec = {}) {
    const ExtNat l = common_prefix_len(x, y, prec);
    if (l.saturated) {
        // Agreement through the horizon; an infinite x cannot prefix a finite y.
        const bool possible = x.is_infinite() ? y.is_infinite()
                                              : (!y.length() || *y.length() >= *x.length());
        return {possible, true};
    }
    return {x.length() && l.value == *x.length(), false};
}

/// x is a subprefix of y: some nonempty initial segment of x lies pointwise below y.
inline bool is_subprefix(const Word& x, const Word& y, const Precision& prec = {}) {
    const ExtNat l = dominated_prefix_len(x, y, prec);
    return l.saturated || l.value >= 1;
}

/// l_<=(x, y) = l(x): every letter of x (through the horizon) lies below y.
inline HorizonVerdict fully_dominates_prefix(const Word& x, const Word& y, const Precision& prec = {}) {
    const ExtNat l = dominated_prefix_len(x, y, prec);
    if (l.saturated) {
        return {true, true};
    }
    return {x.length() && l.value == *x.length(), false};
}

/// Equal lengths and equal letters through the horizon.
inline bool same_word(const Word& x, const Word& y, const Precision& prec = {}) {
    if (x.length() != y.length()) {
        return false;
    }
    const ExtNat l = common_prefix_len(x, y, prec);
    return l.saturated || (x.length() && l.value == *x.length());
}

}  // namespace baire

#endif
