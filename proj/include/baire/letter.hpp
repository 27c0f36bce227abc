#ifndef BAIRE_LETTER_HPP
#define BAIRE_LETTER_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "baire/numerics.hpp"

namespace baire {

/**
 * A finite positive real known only through enclosures that tighten with
 * precision, e.g. k * n * log2(n) at n = 3.
 */
class LazyReal {
public:
    using Evaluator = std::function<Enclosure(unsigned bits)>;

    explicit LazyReal(Evaluator eval) : eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

    Enclosure at(unsigned bits) const { return (*eval_)(bits); }

    bool same_source(const LazyReal& other) const { return eval_ == other.eval_; }

private:
    std::shared_ptr<const Evaluator> eval_;
};

/**
 * One letter of a word over the alphabet (0, inf]. Exact letters are
 * ExtPos values; irrational letters are carried as LazyReal.
 */
class Letter {
public:
    Letter(ExtPos v) : v_(std::move(v)) {}
    Letter(const Rational& q) : v_(ExtPos(q)) {}
    Letter(long n) : v_(ExtPos(n)) {}
    Letter(int n) : v_(ExtPos(n)) {}
    Letter(LazyReal r) : v_(std::move(r)) {}

    static Letter infinity() { return Letter(ExtPos::infinity()); }

    bool is_exact() const { return std::holds_alternative<ExtPos>(v_); }
    bool is_infinite() const { return is_exact() && std::get<ExtPos>(v_).is_infinite(); }

    const ExtPos& exact() const {
        if (!is_exact()) {
            throw DomainError("letter is not exactly representable");
        }
        return std::get<ExtPos>(v_);
    }

    const LazyReal& lazy() const { return std::get<LazyReal>(v_); }

    /// Enclosure of a finite letter at the given precision.
    Enclosure enclose(unsigned bits) const {
        if (is_exact()) {
            return Enclosure(exact().value());
        }
        return lazy().at(bits);
    }

    std::string str(unsigned bits = 64) const {
        if (is_exact()) {
            return exact().str();
        }
        return "~" + to_string(lazy().at(bits));
    }

private:
    std::variant<ExtPos, LazyReal> v_;
};

/// Wraps an enclosure evaluator, collapsing to an exact letter when the value is rational.
inline Letter make_letter(LazyReal::Evaluator eval, const Precision& prec = {}) {
    const Enclosure probe = eval(prec.bits);
    if (probe.exact()) {
        return Letter(ExtPos(probe.lo()));
    }
    if (sgn(probe.hi()) <= 0) {
        throw DomainError("letter value is not positive");
    }
    return Letter(LazyReal(std::move(eval)));
}

inline Letter operator+(const Letter& a, const Letter& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return Letter::infinity();
    }
    if (a.is_exact() && b.is_exact()) {
        return Letter(a.exact() + b.exact());
    }
    return Letter(LazyReal([a, b](unsigned bits) { return a.enclose(bits) + b.enclose(bits); }));
}

/// k * a for a positive rational k.
inline Letter scale(const Rational& k, const Letter& a) {
    if (sgn(k) <= 0) {
        throw DomainError("letters may only be scaled by positive constants");
    }
    if (a.is_infinite()) {
        return a;
    }
    if (a.is_exact()) {
        return Letter(ExtPos(Rational(k * a.exact().value())));
    }
    return Letter(LazyReal([k, a](unsigned bits) { return Enclosure(k) * a.enclose(bits); }));
}

/// Three-valued a <= b in the natural order of (0, inf] at fixed precision.
inline Tri letter_leq(const Letter& a, const Letter& b, unsigned bits) {
    if (b.is_infinite()) {
        return Tri::True;
    }
    if (a.is_infinite()) {
        return Tri::False;
    }
    if (a.is_exact() && b.is_exact()) {
        return tri(a.exact() <= b.exact());
    }
    return less_equal(a.enclose(bits), b.enclose(bits));
}

inline Tri letter_eq(const Letter& a, const Letter& b, unsigned bits) {
    if (a.is_infinite() || b.is_infinite()) {
        return tri(a.is_infinite() && b.is_infinite());
    }
    if (a.is_exact() && b.is_exact()) {
        return tri(a.exact() == b.exact());
    }
    if (!a.is_exact() && !b.is_exact() && a.lazy().same_source(b.lazy())) {
        return Tri::True;
    }
    return equal(a.enclose(bits), b.enclose(bits));
}

inline bool leq(const Letter& a, const Letter& b, const Precision& prec = {}) {
    return escalate([&](unsigned bits) { return letter_leq(a, b, bits); }, prec, "letter comparison");
}

inline bool eq(const Letter& a, const Letter& b, const Precision& prec = {}) {
    return escalate([&](unsigned bits) { return letter_eq(a, b, bits); }, prec, "letter equality");
}

}  // namespace baire

#endif
