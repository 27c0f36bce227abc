#ifndef BAIRE_TESTS_ORACLES_HPP
#define BAIRE_TESTS_ORACLES_HPP

// Reference computations built on Boost.Multiprecision only, so they share
// no arithmetic with the library under test.

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "baire/numerics.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;
using Real = boost::multiprecision::cpp_bin_float_100;

inline Q to_q(const baire::Rational& r) { return Q(Z(r.get_num().get_str()), Z(r.get_den().get_str())); }

inline baire::Rational from_q(const Q& q) {
    baire::Rational r(boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str());
    r.canonicalize();
    return r;
}

inline Real to_real(const baire::Rational& r) {
    return Real(Z(r.get_num().get_str())) / Real(Z(r.get_den().get_str()));
}

inline Real log2(const Real& x) { return boost::multiprecision::log(x) / boost::multiprecision::log(Real(2)); }

/// Forward substitution of T(n) = a T(n/b) + h(n) on the grid, T(1) = c.
inline std::map<std::uint64_t, Q> unroll_dc(std::uint64_t a, std::uint64_t b, const Q& c,
                                            const std::function<Q(std::uint64_t)>& h, std::uint64_t levels) {
    std::map<std::uint64_t, Q> t{{1, c}};
    std::uint64_t n = 1;
    Q prev = c;
    for (std::uint64_t l = 1; l <= levels; ++l) {
        n *= b;
        prev = Q(a) * prev + h(n);
        t[n] = prev;
    }
    return t;
}

/// Forward substitution of T(n) = T(n-1) + h(n), T(1) = c.
inline std::map<std::uint64_t, Q> unroll_linear(const Q& c, const std::function<Q(std::uint64_t)>& h,
                                                std::uint64_t n_max) {
    std::map<std::uint64_t, Q> t{{1, c}};
    Q prev = c;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        prev += h(n);
        t[n] = prev;
    }
    return t;
}

/// (ln 2) / 2 = sum_n 2^{-n} / (2n).
inline Real half_ln2() { return boost::multiprecision::log(Real(2)) / 2; }

}  // namespace oracle

#endif
