#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "baire/sampling.hpp"
#include "baire/words.hpp"

using namespace baire;

namespace {

Word w(std::initializer_list<double> xs) {
    std::vector<Letter> out;
    for (const double x : xs) {
        Rational q(x);
        out.emplace_back(q);
    }
    return Word::finite(std::move(out));
}

Word inf_word(const std::vector<Letter>& prefix, std::uint64_t limit) {
    std::vector<Letter> out = prefix;
    while (out.size() < limit) out.push_back(Letter(7));
    return Word::truncated(std::move(out));
}

}  // namespace

TEST(CommonPrefix, Examples) {
    EXPECT_EQ(common_prefix_len(w({1, 2, 3}), w({1, 2, 5})), ExtNat::finite(2));
    EXPECT_EQ(common_prefix_len(w({1, 2, 3}), w({1, 2, 3})), ExtNat::finite(3));
    EXPECT_EQ(common_prefix_len(w({2, 1}), w({3, 1})), ExtNat::finite(0));
}

TEST(CommonPrefix, SaturatesOnInfiniteWords) {
    const Word x = Word::rule([](std::uint64_t) { return Letter(1); }, 64);
    const Word y = Word::rule([](std::uint64_t) { return Letter(1); }, 64);
    const ExtNat l = common_prefix_len(x, y);
    EXPECT_TRUE(l.saturated);
    EXPECT_EQ(l.value, 64u);
}

TEST(DominatedPrefix, Examples) {
    EXPECT_EQ(dominated_prefix_len(w({1, 3, 2}), w({2, 3, 1})), ExtNat::finite(2));
    EXPECT_EQ(dominated_prefix_len(w({1, 2}), w({1, 2, 7})), ExtNat::finite(2));
    EXPECT_EQ(dominated_prefix_len(w({5, 1}), w({4, 9})), ExtNat::finite(0));
}

TEST(Prefix, Examples) {
    EXPECT_TRUE(is_prefix(w({1, 2}), w({1, 2, 7})).holds);
    EXPECT_FALSE(is_prefix(w({1, 2}), w({1, 3, 7})).holds);
    const Word x = w({4, 1, 9});
    EXPECT_TRUE(is_prefix(x, x).holds);
    EXPECT_FALSE(is_prefix(w({1, 2, 7}), w({1, 2})).holds);
}

TEST(Subprefix, Examples) {
    EXPECT_TRUE(is_subprefix(w({1, 9}), w({2, 1})));
    EXPECT_FALSE(is_subprefix(w({3, 1}), w({2, 9})));
}

TEST(Subprefix, PrefixImpliesSubprefix) {
    SampleRng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Word y = random_finite_word(rng, 6);
        const auto cut = rng.between(1, y.materialized());
        std::vector<Letter> px;
        for (std::uint64_t k = 1; k <= cut; ++k) px.push_back(y.at(k));
        const Word x = Word::finite(px);
        ASSERT_TRUE(is_prefix(x, y).holds);
        ASSERT_TRUE(is_subprefix(x, y));
    }
}

TEST(Subprefix, NotAntisymmetric) {
    // (1,2) and (1,3) share a dominated first letter in both directions yet differ.
    const Word x = w({1, 2});
    const Word y = w({1, 3});
    EXPECT_TRUE(is_subprefix(x, y));
    EXPECT_TRUE(is_subprefix(y, x));
    EXPECT_FALSE(same_word(x, y));
    // (2,1) is not a subprefix of (1,2): its first letter already exceeds.
    EXPECT_TRUE(is_subprefix(w({1, 2}), w({2, 1})));
    EXPECT_FALSE(is_subprefix(w({2, 1}), w({1, 2})));

    SampleRng rng(29);
    bool found = false;
    for (int i = 0; i < 500 && !found; ++i) {
        const Word a = random_finite_word(rng, 3);
        const Word b = random_finite_word(rng, 3);
        found = is_subprefix(a, b) && is_subprefix(b, a) && !same_word(a, b);
    }
    EXPECT_TRUE(found);
}

TEST(FullyDominates, Examples) {
    EXPECT_TRUE(fully_dominates_prefix(w({1, 2, 3}), w({1, 2, 3})).holds);
    EXPECT_TRUE(fully_dominates_prefix(w({1, 2, 3}), w({2, 2, 4})).holds);
    EXPECT_FALSE(fully_dominates_prefix(w({1, 5, 3}), w({2, 2, 4})).holds);
}

TEST(FullyDominates, SaturatesOnInfiniteWords) {
    const Word x = inf_word({Letter(1), Letter(2)}, 32);
    const Word y = inf_word({Letter(1), Letter(3)}, 32);
    const HorizonVerdict v = fully_dominates_prefix(x, y);
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.saturated);
}

TEST(LengthProperties, OnRandomPairs) {
    SampleRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const Word x = random_finite_word(rng, 5);
        const Word y = random_finite_word(rng, 5);
        const ExtNat l = common_prefix_len(x, y);
        const ExtNat ld = dominated_prefix_len(x, y);
        ASSERT_LE(l.value, std::min(*x.length(), *y.length()));
        ASSERT_LE(ld.value, *x.length());
        ASSERT_LE(l.value, ld.value);
        if (is_prefix(x, y).holds) {
            ASSERT_EQ(l.value, ld.value);
        }
        ASSERT_EQ(dominated_prefix_len(x, x).value, *x.length());
    }
}

TEST(PrefixOrder, IsPartialOrderOnRandomTriples) {
    SampleRng rng(23);
    // Short words over a two-letter alphabet so that prefix relations occur often.
    std::vector<Word> sample;
    for (int i = 0; i < 40; ++i) {
        const auto len = rng.between(1, 3);
        std::vector<Letter> xs;
        for (std::uint64_t k = 0; k < len; ++k) xs.emplace_back(static_cast<long>(rng.between(1, 2)));
        sample.push_back(Word::finite(xs));
    }
    for (const auto& x : sample) {
        ASSERT_TRUE(is_prefix(x, x).holds);
        for (const auto& y : sample) {
            if (is_prefix(x, y).holds && is_prefix(y, x).holds) {
                ASSERT_TRUE(same_word(x, y));
            }
            for (const auto& z : sample) {
                if (is_prefix(x, y).holds && is_prefix(y, z).holds) {
                    ASSERT_TRUE(is_prefix(x, z).holds);
                }
            }
        }
    }
}

TEST(Backings, SparseAndDenseAgree) {
    const Schema s = make_divide_conquer(2, 2, Rational(1), HExpr::parse("n"));
    const Horizon h(6);
    SampleRng rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto [x, y] = random_domain_pair(rng, s, h);
        ASSERT_EQ(x.backing(), Word::Backing::Sparse);
        const Word xd = x.densified();
        const Word yd = y.densified();
        ASSERT_EQ(xd.backing(), Word::Backing::Dense);
        EXPECT_EQ(common_prefix_len(x, y), common_prefix_len(xd, yd));
        EXPECT_EQ(dominated_prefix_len(x, y), dominated_prefix_len(xd, yd));
        EXPECT_EQ(dominated_prefix_len(y, x), dominated_prefix_len(yd, xd));
        EXPECT_EQ(is_subprefix(x, y), is_subprefix(xd, yd));
        EXPECT_EQ(fully_dominates_prefix(x, y).holds, fully_dominates_prefix(xd, yd).holds);
        EXPECT_EQ(is_prefix(x, y).holds, is_prefix(xd, yd).holds);
    }
}

TEST(Word, SparseOffGridReadsInfinity) {
    std::map<std::uint64_t, Letter> e{{1, Letter(1)}, {4, Letter(8)}};
    const Word x = Word::sparse(e, std::nullopt, 16, 4);
    EXPECT_TRUE(x.at(3).is_infinite());
    EXPECT_EQ(x.at(4).exact(), ExtPos(8));
    EXPECT_TRUE(x.is_infinite());
    EXPECT_EQ(x.materialized(), 16u);
    EXPECT_EQ(x.bound_exponent(), 4u);
    EXPECT_THROW(x.at(17), std::out_of_range);
    EXPECT_THROW(x.at(0), std::out_of_range);
}

TEST(Word, EmptyRejected) { EXPECT_THROW(Word::finite({}), std::invalid_argument); }

TEST(Horizon, AtLeastTwo) {
    EXPECT_THROW(Horizon(1), std::invalid_argument);
    EXPECT_EQ(Horizon().n_max, 64u);
    EXPECT_EQ(grid_limit(2, 20), 1u << 20);
    EXPECT_THROW(grid_limit(2, 63), std::invalid_argument);
}
