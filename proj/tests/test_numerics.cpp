#include <gtest/gtest.h>

#include <random>

#include "baire/letter.hpp"
#include "baire/numerics.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {

Rational q(long p, long r = 1) {
    Rational x(p, r);
    x.canonicalize();
    return x;
}

}  // namespace

TEST(ExtPos, AddExamples) {
    EXPECT_EQ(add(ExtPos(2), ExtPos(3)), ExtPos(5));
    EXPECT_TRUE(add(ExtPos::infinity(), ExtPos(5)).is_infinite());
    EXPECT_EQ(add(ExtPos(q(1, 2)), ExtPos(q(1, 3))), ExtPos(q(5, 6)));
}

TEST(ExtPos, ReciprocalExamples) {
    EXPECT_EQ(reciprocal(ExtPos(4)), q(1, 4));
    EXPECT_EQ(reciprocal(ExtPos::infinity()), 0);
    EXPECT_EQ(reciprocal(ExtPos(q(1, 3))), 3);
}

TEST(ExtPos, RejectsNonPositive) {
    EXPECT_THROW(ExtPos(0), DomainError);
    EXPECT_THROW(ExtPos(q(-1, 2)), DomainError);
}

TEST(ExtPos, OrderHasInfinityOnTop) {
    EXPECT_LT(ExtPos(1000000), ExtPos::infinity());
    EXPECT_LT(ExtPos(q(1, 3)), ExtPos(q(1, 2)));
    EXPECT_EQ(ExtPos::infinity(), ExtPos::infinity());
}

TEST(ExtPos, AgreesWithRationalOracle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Rational a = q(static_cast<long>(rng() % 1000 + 1), static_cast<long>(rng() % 97 + 1));
        const Rational b = q(static_cast<long>(rng() % 1000 + 1), static_cast<long>(rng() % 97 + 1));
        const oracle::Q oa = oracle::to_q(a), ob = oracle::to_q(b);
        EXPECT_EQ(oracle::to_q((ExtPos(a) + ExtPos(b)).value()), oa + ob);
        EXPECT_EQ(oracle::to_q((ExtPos(a) * ExtPos(b)).value()), oa * ob);
        EXPECT_EQ(ExtPos(a) < ExtPos(b), oa < ob);
        EXPECT_EQ(ExtPos(a) == ExtPos(b), oa == ob);
        EXPECT_EQ(oracle::to_q(reciprocal(ExtPos(a))), 1 / oa);
    }
}

TEST(Pow2Neg, Examples) {
    EXPECT_EQ(pow2neg(ExtNat::finite(3)), q(1, 8));
    EXPECT_EQ(pow2neg(ExtNat::unbounded()), 0);
    EXPECT_EQ(pow2neg(ExtNat::finite(0)), 1);
}

TEST(Pow2Neg, StrictlyAntitone) {
    for (std::uint64_t l = 0; l < 200; ++l) {
        EXPECT_GT(pow2neg(l), pow2neg(l + 1));
        EXPECT_EQ(oracle::to_q(pow2neg(l)), oracle::Q(1) / boost::multiprecision::pow(oracle::Z(2), static_cast<unsigned>(l)));
    }
}

TEST(Log2Enclose, Examples) {
    const Enclosure e8 = log2_enclose(ExtPos(8), 64);
    EXPECT_TRUE(e8.exact());
    EXPECT_EQ(e8.lo(), 3);

    const Enclosure e1 = log2_enclose(ExtPos(1), 64);
    EXPECT_TRUE(e1.exact());
    EXPECT_EQ(e1.lo(), 0);

    const Enclosure e3 = log2_enclose(ExtPos(3), 64);
    EXPECT_FALSE(e3.exact());
    EXPECT_LE(e3.width(), pow2neg(64));
    const oracle::Real l3 = oracle::log2(oracle::Real(3));
    EXPECT_LE(oracle::to_real(e3.lo()), l3);
    EXPECT_GE(oracle::to_real(e3.hi()), l3);

    EXPECT_EQ(log2_enclose(ExtPos(q(1, 4)), 64).lo(), -2);
}

TEST(Log2Enclose, InfinityIsDomainError) { EXPECT_THROW(log2_enclose(ExtPos::infinity(), 64), DomainError); }

TEST(Log2Enclose, ContainsHighPrecisionOracle) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const Rational a = q(static_cast<long>(rng() % 100000 + 1), static_cast<long>(rng() % 1000 + 1));
        const unsigned bits = 53 + static_cast<unsigned>(rng() % 100);
        const Enclosure e = log2_enclose(ExtPos(a), bits);
        const oracle::Real exact = oracle::log2(oracle::to_real(a));
        ASSERT_LE(oracle::to_real(e.lo()), exact) << a.get_str();
        ASSERT_GE(oracle::to_real(e.hi()), exact) << a.get_str();
        ASSERT_LE(e.width(), pow2neg(bits));
    }
}

TEST(Enclosure, ArithmeticIsConservative) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const Rational a = q(static_cast<long>(rng() % 500 + 1), static_cast<long>(rng() % 50 + 1));
        const Rational b = q(static_cast<long>(rng() % 500 + 1), static_cast<long>(rng() % 50 + 1));
        const Enclosure la = log2_enclose(ExtPos(a), 80);
        const Enclosure lb = log2_enclose(ExtPos(b), 80);
        const oracle::Real ra = oracle::log2(oracle::to_real(a));
        const oracle::Real rb = oracle::log2(oracle::to_real(b));
        const auto inside = [](const Enclosure& e, const oracle::Real& v) {
            return oracle::to_real(e.lo()) <= v && v <= oracle::to_real(e.hi());
        };
        ASSERT_TRUE(inside(la + lb, ra + rb));
        ASSERT_TRUE(inside(la - lb, ra - rb));
        ASSERT_TRUE(inside(la * lb, ra * rb));
        if (a != 1 && b != 1) {
            ASSERT_TRUE(inside(la / lb, ra / rb));
        }
    }
}

TEST(Enclosure, ThreeValuedComparison) {
    const Enclosure a(q(1), q(2));
    const Enclosure b(q(3), q(4));
    EXPECT_EQ(less_equal(a, b), Tri::True);
    EXPECT_EQ(less_equal(b, a), Tri::False);
    EXPECT_EQ(less_equal(a, Enclosure(q(3, 2))), Tri::Unknown);
    EXPECT_EQ(equal(Enclosure(q(2)), Enclosure(q(2))), Tri::True);
    EXPECT_THROW(Enclosure(q(2), q(1)), std::invalid_argument);
}

TEST(Escalate, RefinesUntilDecided) {
    // log2(3) against a rational 2^-200 above it: needs more than 128 bits.
    const Rational above = Rational(log2_enclose(ExtPos(3), 400).hi() + pow2neg(200));
    Precision prec{64, 4096};
    EXPECT_TRUE(escalate([&](unsigned bits) { return less(log2_enclose(ExtPos(3), bits), Enclosure(above)); }, prec,
                         "log2 3 < bound"));
}

TEST(Escalate, ExhaustionThrows) {
    // Two independently evaluated copies of log2(3) never separate.
    const Letter x = make_letter([](unsigned bits) { return log2_enclose(ExtPos(3), bits); });
    const Letter y = make_letter([](unsigned bits) { return log2_enclose(ExtPos(3), bits); });
    EXPECT_THROW(eq(x, y, Precision{128, 512}), PrecisionError);
    EXPECT_TRUE(eq(x, x, Precision{128, 512}));
}

TEST(ParseRational, Forms) {
    EXPECT_EQ(parse_rational("3"), 3);
    EXPECT_EQ(parse_rational("6/4"), q(3, 2));
    EXPECT_EQ(parse_rational("0.125"), q(1, 8));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Letter, LazyCollapsesWhenRational) {
    const Letter l = make_letter([](unsigned bits) { return log2_enclose(ExtPos(16), bits); });
    ASSERT_TRUE(l.is_exact());
    EXPECT_EQ(l.exact(), ExtPos(4));
    const Letter m = make_letter([](unsigned bits) { return log2_enclose(ExtPos(5), bits); });
    EXPECT_FALSE(m.is_exact());
    EXPECT_TRUE(leq(m, Letter(3)));
    EXPECT_FALSE(leq(m, Letter(2)));
    EXPECT_TRUE(leq(m, Letter::infinity()));
}
