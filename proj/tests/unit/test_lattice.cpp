#include "dioph/error.hpp"
#include "dioph/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dioph;

namespace {

ExactReal lit(const char* s) { return parse_exact_real(s); }
const ApproxMatrix kGolden = ApproxMatrix::scalar(lit("(-1+1*sqrt(5))/2"));
const ApproxMatrix kSqrt2 = ApproxMatrix::scalar(ExactReal::sqrt(2));

std::vector<BigInt> norms(const BestApproxSequence& s) {
    std::vector<BigInt> out;
    for (const auto& e : s.entries) {
        out.push_back(e.Y);
    }
    return out;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

} // namespace

TEST(SolveHomogeneous, GoldenHasNoSolutionBelowFour) {
    EXPECT_FALSE(solve_homogeneous(kGolden, RootReal(lit("1/10")), 4).has_value());
}

TEST(SolveHomogeneous, RationalDegeneracy) {
    const auto q = solve_homogeneous(ApproxMatrix::scalar(lit("1/3")), RootReal(lit("1/10")), 4);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->norm(), 3);
}

TEST(SolveHomogeneous, SqrtTwoFirstHitInEnumerationOrder) {
    const auto q = solve_homogeneous(kSqrt2, RootReal(lit("1/2")), 2);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, IntVec({-1}));
}

TEST(SolveHomogeneous, AgreesWithIndependentScanOnSmallBoxes) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> coef(-6, 6);
    std::uniform_int_distribution<long> den(2, 9);
    for (int t = 0; t < 40; ++t) {
        const ApproxMatrix A(1, 2, {ExactReal::quadratic(BigRational(coef(rng), den(rng)), BigRational(coef(rng) | 1, den(rng)), 5),
                                    ExactReal::quadratic(BigRational(coef(rng), den(rng)), BigRational(coef(rng), den(rng)), 5)});
        const ExactReal C(BigRational(1, den(rng) * 3));
        const long X = 2 + t % 6;
        bool exists = false;
        for (long a = -X + 1; a < X && !exists; ++a) {
            for (long b = -X + 1; b < X && !exists; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const std::vector<std::int64_t> q{a, b};
                exists = certainly_less(dist_to_int_vec(A.apply(q)), C);
            }
        }
        EXPECT_EQ(solve_homogeneous(A, RootReal(C), X).has_value(), exists) << t;
    }
}

TEST(SolveHomogeneous, BudgetIsEnforced) {
    EnumerationOptions opts;
    opts.budget = 100;
    EXPECT_THROW(solve_homogeneous(kGolden, RootReal(lit("1/1000000")), 1000, opts), BudgetExceeded);
}

TEST(ReturnSequence, GoldenIsFullAtHorizonTwelve) {
    const ReturnSequence L = return_sequence(kGolden, lit("2/5"), 12);
    std::vector<long> expected(12);
    for (long i = 0; i < 12; ++i) {
        expected[i] = i + 1;
    }
    EXPECT_EQ(L.levels, expected);
}

TEST(ReturnSequence, RationalDropsEveryLevelFromTwo) {
    const ReturnSequence L = return_sequence(ApproxMatrix::scalar(lit("1/2")), lit("1/3"), 3);
    for (long ell : L.levels) {
        EXPECT_LT(ell, 2);
    }
}

TEST(ReturnSequence, SqrtTwoAtEpsilonOneIsEmpty) {
    EXPECT_TRUE(return_sequence(kSqrt2, lit("1"), 1).levels.empty());
}

TEST(ReturnSequence, MonotoneInEpsilon) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-7, 7);
    for (int t = 0; t < 15; ++t) {
        long b = coef(rng);
        if (b == 0) {
            b = 1;
        }
        const ApproxMatrix A = ApproxMatrix::scalar(ExactReal::quadratic(BigRational(coef(rng), 5), BigRational(b, 3), 11));
        const ReturnSequence big = return_sequence(A, lit("1/2"), 8);
        const ReturnSequence small = return_sequence(A, lit("1/5"), 8);
        for (long ell : big.levels) {
            EXPECT_NE(std::find(small.levels.begin(), small.levels.end(), ell), small.levels.end());
        }
    }
}

TEST(ReturnSequence, LevelsCertifyTheHomogeneousBound) {
    const ExactReal eps = lit("2/5");
    const ReturnSequence L = return_sequence(kGolden, eps, 8);
    for (long ell : L.levels) {
        const RootReal C = return_threshold(eps, ell, 1, 1);
        for (std::int64_t q = 1; q < (std::int64_t{1} << ell); ++q) {
            const std::vector<std::int64_t> v{q};
            EXPECT_TRUE(certainly_less_equal(C, RootReal(dist_to_int_vec(kGolden.apply(v)))));
        }
    }
}

TEST(ReturnThreshold, FractionalExponentStaysExact) {
    // m = 2, n = 1: eps 2^(-l/2); at l = 2 and eps = 1 this is 1/2.
    const RootReal t = return_threshold(lit("1"), 2, 2, 1);
    EXPECT_TRUE(t.simplified().is_exact());
    EXPECT_TRUE(certainly_equal(t, RootReal(lit("1/2"))));
    EXPECT_FALSE(return_threshold(lit("1"), 1, 2, 1).simplified().is_exact());
}

TEST(BadWitness, GoldenMinimumIsAtNormOne) {
    const BadWitness w = bad_witness(kGolden, 8);
    EXPECT_NEAR(w.min_value.approx(), 0.381966011250105, 1e-14);
    EXPECT_EQ(w.argmin, IntVec({-1}));
}

TEST(BadWitness, RationalReachesZero) {
    const BadWitness w = bad_witness(ApproxMatrix::scalar(lit("1/3")), 3);
    EXPECT_EQ(certain_sign(w.min_value.numerator()), 0);
    EXPECT_EQ(w.argmin.norm(), 3);
}

TEST(BadWitness, SqrtTwoAtTwo) {
    const BadWitness w = bad_witness(kSqrt2, 2);
    EXPECT_NEAR(w.min_value.approx(), 0.34314575050762, 1e-13);
    EXPECT_EQ(w.argmin, IntVec({-2}));
    EXPECT_TRUE(certainly_equal(w.min_value, RootReal(ExactReal(6L) - ExactReal(4L) * ExactReal::sqrt(2))));
}

TEST(BestApproximations, GoldenGivesFibonacci) {
    const auto s = best_approximations(kGolden, 21);
    EXPECT_EQ(norms(s), ints({1, 2, 3, 5, 8, 13, 21}));
}

TEST(BestApproximations, SqrtTwoConvergents) { EXPECT_EQ(norms(best_approximations(kSqrt2, 12)), ints({1, 2, 5, 12})); }

TEST(BestApproximations, OtherQuadratics) {
    EXPECT_EQ(norms(best_approximations(ApproxMatrix::scalar(ExactReal::sqrt(3)), 200)),
              ints({1, 3, 4, 11, 15, 41, 56, 153}));
    EXPECT_EQ(norms(best_approximations(ApproxMatrix::scalar(lit("(1+sqrt(7))/3")), 500)),
              ints({1, 4, 5, 9, 14, 65, 79, 144, 223}));
}

TEST(BestApproximations, RecordsAreMonotone) {
    const ApproxMatrix A(1, 2, {ExactReal::sqrt(2), ExactReal::sqrt(2) * lit("1/3") + lit("1/5")});
    const auto s = best_approximations(A, 40);
    ASSERT_GE(s.entries.size(), 3u);
    for (std::size_t k = 1; k < s.entries.size(); ++k) {
        EXPECT_LT(s.entries[k - 1].Y, s.entries[k].Y);
        EXPECT_TRUE(certainly_less(s.entries[k].M, s.entries[k - 1].M));
    }
}

TEST(BestApproximations, RationalIsRankDeficient) {
    EXPECT_THROW(best_approximations(ApproxMatrix::scalar(lit("1/2")), 4), RankDeficient);
}

TEST(BestApproximations, ConvergentRouteMatchesScan) {
    for (const char* a : {"(-1+1*sqrt(5))/2", "sqrt(3)", "(1+sqrt(7))/3", "(2+3*sqrt(2))/7"}) {
        const ExactReal alpha = lit(a);
        const auto scan = best_approximations(ApproxMatrix::scalar(alpha), 300);
        const auto cf = best_approximations_from_cf(alpha, scan.entries.size());
        ASSERT_EQ(scan.entries.size(), cf.entries.size()) << a;
        for (std::size_t k = 0; k < scan.entries.size(); ++k) {
            EXPECT_EQ(scan.entries[k].y, cf.entries[k].y) << a;
            EXPECT_TRUE(certainly_equal(scan.entries[k].M, cf.entries[k].M)) << a;
        }
    }
}

TEST(BestApproximations, FastGrowingQuotients) {
    const ExactReal alpha = ExactReal::continued_fraction(ints({0, 4, 16, 256, 65536, 4294967296L}));
    const auto s = best_approximations_from_cf(alpha, 4);
    EXPECT_EQ(norms(s), ints({1, 4, 65, 16644}));
}

TEST(CheckRank, Examples) {
    EXPECT_TRUE(check_rank(kSqrt2));
    EXPECT_FALSE(check_rank(ApproxMatrix::scalar(lit("1/2"))));
    EXPECT_TRUE(check_rank(ApproxMatrix(1, 2, {ExactReal::sqrt(2), lit("1+sqrt(2)")})));
    EXPECT_FALSE(check_rank(ApproxMatrix(2, 1, {ExactReal::sqrt(2), lit("1+sqrt(2)")})));
    EXPECT_THROW(check_rank(ApproxMatrix::scalar(lit("cf:[0;2,3]"))), Unsupported);
}

TEST(ContinuedFraction, PeriodicQuadratics) {
    const ContinuedFraction g = continued_fraction(lit("(-1+1*sqrt(5))/2"), 6);
    EXPECT_EQ(g.quotients, ints({0, 1, 1, 1, 1, 1}));
    ASSERT_TRUE(g.period_start.has_value());
    EXPECT_EQ(g.period, ints({1}));
    const ContinuedFraction r = continued_fraction(ExactReal::sqrt(2), 5);
    EXPECT_EQ(r.quotients, ints({1, 2, 2, 2, 2}));
    EXPECT_EQ(r.period, ints({2}));
    EXPECT_EQ(*r.period_start, 1u);
}

TEST(ContinuedFraction, RationalTerminates) {
    const ContinuedFraction c = continued_fraction(lit("7/3"), 10);
    EXPECT_EQ(c.quotients, ints({2, 3}));
    EXPECT_TRUE(c.terminated);
}

TEST(ContinuedFraction, ConvergentDenominatorsMatchBestApproximations) {
    const auto q = convergent_denominators(continued_fraction(ExactReal::sqrt(2), 4).quotients);
    EXPECT_EQ(q, ints({1, 2, 5, 12}));
}
