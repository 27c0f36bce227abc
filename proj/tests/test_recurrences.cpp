#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "baire/recurrences.hpp"
#include "baire/sampling.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {

Rational q(long p, long r = 1) {
    Rational x(p, r);
    x.canonicalize();
    return x;
}

DivideConquerRec mergesort_average(const Rational& c = 1) { return make_divide_conquer(2, 2, c, parse_h("n/2")); }
LinearRec quicksort_worst(const Rational& c = 1, const Rational& j = 1) {
    return make_linear(c, parse_h(to_string(j) + "*n"));
}
LinearRec largetwo(const Rational& c = 1) { return make_linear(c, parse_h("2-1/n")); }

Word grid_word(std::map<std::uint64_t, Letter> e, std::uint64_t limit) {
    return Word::sparse(std::move(e), std::nullopt, limit, limit);
}

Rational value(const Word& x, std::uint64_t n) { return x.at(n).exact().value(); }

}  // namespace

TEST(Theta, Examples) {
    const auto rec = mergesort_average();
    const Word x = grid_word({{1, Letter(1)}, {2, Letter(3)}}, 8);
    EXPECT_EQ(value(apply_theta(rec, x), 4), 8);
    const Word y = grid_word({{1, Letter(1)}, {2, Letter(5)}}, 8);
    EXPECT_EQ(value(apply_theta(rec, y), 4), 12);
    EXPECT_TRUE(apply_theta(rec, y).at(3).is_infinite());
}

TEST(Theta, FixedPointUnchanged) {
    const auto rec = mergesort_average();
    const Word v = grid_word({{1, Letter(1)}, {2, Letter(3)}, {4, Letter(8)}, {8, Letter(20)}, {16, Letter(48)}}, 16);
    const Word tv = apply_theta(rec, v);
    for (std::uint64_t n : {1u, 2u, 4u, 8u}) EXPECT_EQ(value(tv, n), value(v, n));
}

TEST(Theta, FiniteWordLength) {
    const auto rec = mergesort_average();
    // x = (1, 3, inf) of length 3: off-grid positions stop at 4, and 5 is off-grid.
    const Word x = Word::finite({Letter(1), Letter(3), Letter::infinity()});
    const Word t = apply_theta(rec, x);
    ASSERT_TRUE(t.length().has_value());
    EXPECT_EQ(*t.length(), 4u);
    EXPECT_EQ(value(t, 4), 8);
}

TEST(Theta, DomainErrors) {
    const auto rec = mergesort_average();
    EXPECT_THROW(apply_theta(rec, grid_word({{1, Letter(2)}}, 8)), DomainError);
    EXPECT_THROW(apply_theta(rec, grid_word({{1, Letter(1)}, {3, Letter(1)}}, 8)), DomainError);
    EXPECT_THROW(apply_theta(rec, Word::finite({Letter(1)})), DomainError);
}

TEST(Psi, Examples) {
    const Word x = Word::finite({Letter(1), Letter(3)});
    EXPECT_EQ(value(apply_psi(quicksort_worst(), x), 2), 3);
    const Word y = Word::finite({Letter(1), Letter(1)});
    EXPECT_EQ(value(apply_psi(largetwo(), y), 2), q(5, 2));
    const Word fp = Word::finite({Letter(1), Letter(q(5, 2)), Letter(q(25, 6))});
    const Word out = apply_psi(largetwo(), fp);
    for (std::uint64_t n = 1; n <= 3; ++n) EXPECT_EQ(value(out, n), value(fp, n));
    EXPECT_THROW(apply_psi(largetwo(), Word::finite({Letter(2), Letter(2)})), DomainError);
}

TEST(OracleSolve, Examples) {
    const Solution ms = oracle_solve(mergesort_average(), Horizon(4));
    EXPECT_EQ(value(ms.word, 1), 1);
    EXPECT_EQ(value(ms.word, 2), 3);
    EXPECT_EQ(value(ms.word, 4), 8);
    EXPECT_EQ(value(ms.word, 8), 20);
    EXPECT_EQ(value(ms.word, 16), 48);

    const Solution qs = oracle_solve(quicksort_worst(), Horizon(1024));
    EXPECT_EQ(value(qs.word, 4), 10);
    for (std::uint64_t n = 1; n <= 1024; ++n) ASSERT_EQ(value(qs.word, n), Rational(n * (n + 1) / 2));

    const Solution lt = oracle_solve(largetwo(), Horizon(4));
    EXPECT_EQ(value(lt.word, 2), q(5, 2));
    EXPECT_EQ(value(lt.word, 3), q(25, 6));
    EXPECT_EQ(value(lt.word, 4), q(71, 12));
}

TEST(OracleSolve, MatchesBoostUnrolling) {
    const auto ms = oracle::unroll_dc(2, 2, 1, [](std::uint64_t n) { return oracle::Q(n, 2); }, 16);
    const Solution s = oracle_solve(mergesort_average(), Horizon(16));
    for (const auto& [n, v] : ms) {
        ASSERT_EQ(oracle::to_q(value(s.word, n)), v) << n;
    }
    const auto lt = oracle::unroll_linear(1, [](std::uint64_t n) { return oracle::Q(2) - oracle::Q(1, n); }, 64);
    const Solution l = oracle_solve(largetwo(), Horizon(64));
    for (const auto& [n, v] : lt) ASSERT_EQ(oracle::to_q(value(l.word, n)), v);
}

TEST(FixpointSolve, EqualsOracle) {
    for (const Schema& s : {Schema(mergesort_average()), Schema(largetwo()), Schema(quicksort_worst(q(3, 2), q(2)))}) {
        const Horizon h(is_divide_conquer(s) ? 16 : 64);
        const Solution a = fixpoint_solve(s, h);
        const Solution b = oracle_solve(s, h);
        ASSERT_EQ(a.word.materialized(), b.word.materialized());
        EXPECT_TRUE(same_word(a.word, b.word));
        for (const auto n : evaluated_indices(s, h)) ASSERT_EQ(value(a.word, n), value(b.word, n));
        EXPECT_LE(a.iterations, h.n_max + 1);
        EXPECT_TRUE(a.residual.horizon_bound);
    }
}

TEST(FixpointSolve, Membership) {
    const Solution v = fixpoint_solve(make_divide_conquer(3, 3, q(2), parse_h("n^2")), Horizon(8));
    EXPECT_EQ(v.word.at(1).exact(), ExtPos(2));
    for (std::uint64_t n = 2; n <= 100; ++n) {
        EXPECT_EQ(v.word.at(n).is_infinite(), !on_grid(n, 3)) << n;
    }
}

TEST(FixpointSolve, SelfDistanceVanishesThroughHorizon) {
    const Solution v = fixpoint_solve(mergesort_average(), Horizon(12));
    const DistanceValue d = baire_pqm(v.word, v.word);
    EXPECT_TRUE(d.horizon_bound);
    EXPECT_EQ(d.upper(), pow2neg(12));
}

TEST(Functionals, Monotone) {
    SampleRng rng(41);
    for (const Schema& s : {Schema(mergesort_average()), Schema(largetwo())}) {
        const Horizon h(is_divide_conquer(s) ? 8 : 24);
        for (int i = 0; i < 200; ++i) {
            const Word x = random_domain_word(rng, s, h, false);
            // y >= x pointwise: add a nonnegative perturbation on the evaluated indices.
            Word y = x;
            for (const auto n : evaluated_indices(s, h)) {
                if (rng.coin()) y = with_letter(y, n, x.at(n) + Letter(rng.positive()));
            }
            ASSERT_TRUE(fully_dominates_prefix(x, y).holds);
            ASSERT_TRUE(fully_dominates_prefix(apply_functional(s, x), apply_functional(s, y)).holds);
        }
    }
}

TEST(Contraction, BaireDistancesHalve) {
    for (const Schema& s : {Schema(mergesort_average()), Schema(largetwo())}) {
        const Horizon h(is_divide_conquer(s) ? 10 : 32);
        const auto pairs = random_domain_pairs(77, s, h, 1000);
        for (const auto m : {ContractionMetric::BaireP, ContractionMetric::BaireQ}) {
            const ContractionMeasurement r = measure_contraction(s, pairs, m);
            EXPECT_LE(r.sup_ratio, q(1, 2)) << to_string(m);
            EXPECT_GT(r.used, 100u);
        }
    }
}

TEST(Contraction, ComplexityDistanceShrinksByA) {
    for (std::uint64_t a : {2u, 3u}) {
        const Schema s = make_divide_conquer(a, 2, q(1), parse_h("n"));
        const Horizon h(6);
        const auto pairs = random_domain_pairs(5, s, h, 200);
        const ContractionMeasurement r = measure_contraction(s, pairs, ContractionMetric::ComplexityTruncated, 64);
        EXPECT_LE(r.sup_ratio, Rational(Rational(1, a) + pow2neg(6)));
    }
}

TEST(Contraction, EmptySampleIsError) {
    const Schema s = largetwo();
    SampleRng rng(1);
    const Word x = random_domain_word(rng, s, Horizon(8));
    const std::vector<std::pair<Word, Word>> pairs{{x, x}};
    EXPECT_THROW(measure_contraction(s, pairs, ContractionMetric::BaireP), std::invalid_argument);
}
