#ifndef BAIRE_NUMERICS_HPP
#define BAIRE_NUMERICS_HPP

/**
 * @file numerics.hpp
 *
 * Exact arithmetic over the positive extended reals (0, inf] and outward
 * rounded rational enclosures for the one irrational source, log2.
 */

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace baire {

using Rational = mpq_class;
using Integer = mpz_class;

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A three-valued comparison stayed undecided after escalating to the precision cap.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Working precision for enclosure arithmetic. Undecided comparisons are
 * retried with doubled bits until `cap_bits` is exceeded.
 */
struct Precision {
    unsigned bits = 128;
    unsigned cap_bits = 4096;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "p/q" or a plain decimal "1.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const auto frac = text.size() - dot - 1;
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
            (dot > 0 && text.substr(0, dot).find_first_not_of("0123456789") != std::string::npos)) {
            throw std::invalid_argument("malformed decimal literal '" + text + "'");
        }
        Integer num(digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        Rational out(num, den);
        out.canonicalize();
        return out;
    }
    const auto body = text[0] == '-' ? text.substr(1) : text;
    const auto slash = body.find('/');
    const auto check = [&](const std::string& part) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        }
    };
    if (slash == std::string::npos) {
        check(body);
    } else {
        check(body.substr(0, slash));
        check(body.substr(slash + 1));
    }
    Rational out;
    if (out.set_str(text, 10) != 0 || out.get_den() == 0) {
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
    out.canonicalize();
    return out;
}

/// Exact 2^{-l}.
inline Rational pow2neg(std::uint64_t l) {
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), l);
    return Rational(Integer(1), den);
}

/// Exact 2^{l}, l may be negative.
inline Rational pow2(std::int64_t l) {
    if (l < 0) {
        return pow2neg(static_cast<std::uint64_t>(-l));
    }
    Integer num = 1;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(l));
    return Rational(num);
}

/**
 * An element of (0, inf]: either a strictly positive exact rational or the
 * symbol infinity, which is the top of the order.
 */
class ExtPos {
public:
    ExtPos(const Rational& q) : value_(q) {
        value_->canonicalize();
        if (sgn(*value_) <= 0) {
            throw DomainError("ExtPos requires a strictly positive value, got " + to_string(*value_));
        }
    }
    ExtPos(long n) : ExtPos(Rational(n)) {}
    ExtPos(int n) : ExtPos(Rational(n)) {}

    static ExtPos infinity() { return ExtPos(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    const Rational& value() const {
        if (!value_) {
            throw DomainError("infinity has no finite value");
        }
        return *value_;
    }

    std::string str() const { return value_ ? to_string(*value_) : std::string("inf"); }

    friend bool operator==(const ExtPos& a, const ExtPos& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return a.is_infinite() && b.is_infinite();
        }
        return *a.value_ == *b.value_;
    }

    friend std::strong_ordering operator<=>(const ExtPos& a, const ExtPos& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        }
        const int c = cmp(*a.value_, *b.value_);
        return c <=> 0;
    }

private:
    ExtPos() = default;
    std::optional<Rational> value_;
};

inline ExtPos operator+(const ExtPos& a, const ExtPos& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return ExtPos::infinity();
    }
    return ExtPos(Rational(a.value() + b.value()));
}

inline ExtPos operator*(const ExtPos& a, const ExtPos& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return ExtPos::infinity();
    }
    return ExtPos(Rational(a.value() * b.value()));
}

inline ExtPos add(const ExtPos& a, const ExtPos& b) { return a + b; }

/// 1/a with the convention 1/inf = 0.
inline Rational reciprocal(const ExtPos& a) {
    if (a.is_infinite()) {
        return Rational(0);
    }
    return Rational(1) / a.value();
}

/**
 * A length in {0, 1, 2, ...} u {inf}. `saturated` marks a length that
 * reached the materialization horizon: the true value is at least `value`.
 */
struct ExtNat {
    std::uint64_t value = 0;
    bool infinite = false;
    bool saturated = false;

    static ExtNat finite(std::uint64_t n) { return {n, false, false}; }
    static ExtNat unbounded() { return {0, true, false}; }
    static ExtNat at_horizon(std::uint64_t horizon) { return {horizon, false, true}; }

    bool operator==(const ExtNat&) const = default;
};

inline std::string to_string(const ExtNat& n) {
    if (n.infinite) {
        return "inf";
    }
    return (n.saturated ? ">=" : "") + std::to_string(n.value);
}

/// 2^{-l} with 2^{-inf} = 0. A saturated length yields the certified bound 2^{-horizon}.
inline Rational pow2neg(const ExtNat& l) {
    if (l.infinite) {
        return Rational(0);
    }
    return pow2neg(l.value);
}

enum class Tri { False, True, Unknown };

inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

/**
 * Closed rational interval [lo, hi] containing a real value. Endpoint
 * arithmetic is exact, so every operation is conservative.
 */
class Enclosure {
public:
    Enclosure() : lo_(0), hi_(0) {}
    Enclosure(const Rational& exact) : lo_(exact), hi_(exact) {}
    Enclosure(long n) : Enclosure(Rational(n)) {}
    Enclosure(int n) : Enclosure(Rational(n)) {}
    Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) {
            throw std::invalid_argument("enclosure with lo > hi");
        }
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool exact() const { return lo_ == hi_; }
    Rational width() const { return hi_ - lo_; }
    bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }

    Enclosure operator-() const { return {-hi_, -lo_}; }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_};
    }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        if (a.exact() && b.exact()) {
            return Enclosure(Rational(a.lo_ * b.lo_));
        }
        Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
        if (b.exact() && sgn(b.lo_) == 0) {
            throw DomainError("division by zero");
        }
        if (sgn(b.lo_) <= 0 && sgn(b.hi_) >= 0) {
            throw PrecisionError("divisor enclosure straddles zero");
        }
        return a * Enclosure(Rational(1 / b.hi_), Rational(1 / b.lo_));
    }

    /// Pointwise max, used for max(0, x) style clamps.
    friend Enclosure max(const Enclosure& a, const Enclosure& b) {
        return {std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
    }

    bool operator==(const Enclosure&) const = default;

private:
    Rational lo_;
    Rational hi_;
};

inline std::string to_string(const Enclosure& e) {
    if (e.exact()) {
        return to_string(e.lo());
    }
    return "[" + to_string(e.lo()) + ", " + to_string(e.hi()) + "]";
}

/// a <= b: True/False when the enclosures decide it, Unknown when they overlap.
inline Tri less_equal(const Enclosure& a, const Enclosure& b) {
    if (a.hi() <= b.lo()) {
        return Tri::True;
    }
    if (a.lo() > b.hi()) {
        return Tri::False;
    }
    return Tri::Unknown;
}

inline Tri less(const Enclosure& a, const Enclosure& b) {
    if (a.hi() < b.lo()) {
        return Tri::True;
    }
    if (a.lo() >= b.hi()) {
        return Tri::False;
    }
    return Tri::Unknown;
}

inline Tri equal(const Enclosure& a, const Enclosure& b) {
    if (a.exact() && b.exact()) {
        return tri(a.lo() == b.lo());
    }
    if (a.hi() < b.lo() || b.hi() < a.lo()) {
        return Tri::False;
    }
    return Tri::Unknown;
}

/**
 * Re-evaluates `decide(bits)` with doubling precision until it returns a
 * definite answer. Throws PrecisionError past the cap.
 */
template <typename Decide>
bool escalate(Decide&& decide, const Precision& prec, const std::string& what) {
    for (unsigned bits = prec.bits; bits <= prec.cap_bits; bits *= 2) {
        const Tri t = decide(bits);
        if (t != Tri::Unknown) {
            return t == Tri::True;
        }
    }
    throw PrecisionError("undecided after " + std::to_string(prec.cap_bits) + " bits: " + what);
}

namespace detail {

/// If q = 2^e exactly, returns e.
inline std::optional<std::int64_t> exact_log2(const Rational& q) {
    if (sgn(q) <= 0) {
        return std::nullopt;
    }
    const mpz_srcptr num = q.get_num_mpz_t();
    const mpz_srcptr den = q.get_den_mpz_t();
    if (mpz_popcount(num) != 1 || mpz_popcount(den) != 1) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(mpz_scan1(num, 0)) - static_cast<std::int64_t>(mpz_scan1(den, 0));
}

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t p) { mpfr_init2(v_, p); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

    Rational to_rational() {
        Rational out;
        mpfr_get_q(out.get_mpq_t(), v_);
        return out;
    }

private:
    mpfr_t v_;
};

/// Directed log2 of a positive rational: rounded down or up.
inline Rational log2_directed(const Rational& q, mpfr_prec_t p, bool upward) {
    const mpfr_rnd_t rnd = upward ? MPFR_RNDU : MPFR_RNDD;
    MpfrValue x(p);
    MpfrValue y(p);
    // log2 is increasing, so rounding the argument the same way keeps the bound valid.
    mpfr_set_q(x.get(), q.get_mpq_t(), rnd);
    mpfr_log2(y.get(), x.get(), rnd);
    return y.to_rational();
}

}  // namespace detail

/**
 * Enclosure of log2 over an interval of positive rationals with width at
 * most 2^{-precision_bits} for point inputs. Exact for powers of two.
 */
inline Enclosure log2_enclose(const Enclosure& a, unsigned precision_bits) {
    if (sgn(a.hi()) <= 0) {
        throw DomainError("log2 of a non-positive value");
    }
    if (sgn(a.lo()) <= 0) {
        throw PrecisionError("log2 argument enclosure reaches zero");
    }
    if (a.exact()) {
        if (const auto e = detail::exact_log2(a.lo())) {
            return Enclosure(Rational(*e));
        }
    }
    // Magnitude of the result sets how many mantissa bits reach the fractional part.
    const auto mag = [](const Rational& q) {
        const long nb = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
        const long db = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
        return std::abs(nb - db) + 2;
    };
    const long int_bits = std::max(mag(a.lo()), mag(a.hi()));
    mpfr_prec_t p = static_cast<mpfr_prec_t>(precision_bits) + 64 +
                    static_cast<mpfr_prec_t>(64 - __builtin_clzll(static_cast<unsigned long long>(int_bits)));
    const Rational target = pow2neg(precision_bits);
    for (int attempt = 0; attempt < 8; ++attempt, p += 64) {
        Enclosure out(detail::log2_directed(a.lo(), p, false), detail::log2_directed(a.hi(), p, true));
        if (!a.exact() || out.width() <= target) {
            return out;
        }
    }
    throw PrecisionError("log2 enclosure did not reach requested width");
}

inline Enclosure log2_enclose(const ExtPos& a, unsigned precision_bits) {
    if (a.is_infinite()) {
        throw DomainError("log2 of infinity");
    }
    return log2_enclose(Enclosure(a.value()), precision_bits);
}

}  // namespace baire

#endif
