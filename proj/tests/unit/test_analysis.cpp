#include "dioph/analysis.hpp"
#include "dioph/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dioph;

namespace {

ExactReal lit(const char* s) { return parse_exact_real(s); }
const ApproxMatrix kGolden = ApproxMatrix::scalar(lit("(-1+1*sqrt(5))/2"));

struct SeriesCase {
    std::size_t n;
    BigRational s;
    BigRational a;
    BigRational beta;
    SeriesStatus expected;
};

} // namespace

TEST(ClassifySeries, ClosedFormAndTrendAgree) {
    const SeriesCase cases[] = {
        {1, 1, BigRational(1, 2), 0, SeriesStatus::Diverges},
        {1, 1, 1, 0, SeriesStatus::Diverges},
        {1, 1, 1, 3, SeriesStatus::Converges},
        {1, 1, 2, 0, SeriesStatus::Converges},
        {2, 1, 2, 0, SeriesStatus::Diverges},
        {2, 1, 3, 0, SeriesStatus::Converges},
    };
    for (const auto& c : cases) {
        const SeriesVerdict v = classify_series(ApproxFunction::power_log(1, c.a, c.beta), c.s, c.n, 100000);
        EXPECT_EQ(v.status, c.expected) << v.rationale;
        EXPECT_EQ(v.trend, c.expected) << "tail exponent " << v.tail_exponent;
        for (std::size_t i = 1; i < v.partial_sums.size(); ++i) {
            EXPECT_GE(v.partial_sums[i].value, v.partial_sums[i - 1].value);
        }
    }
}

TEST(ClassifySeries, HarmonicPartialSums) {
    const SeriesVerdict v = classify_series(ApproxFunction::power_log(1, 1), 1, 1, 1000);
    ASSERT_EQ(v.partial_sums.size(), 4u);
    EXPECT_EQ(v.partial_sums[1].horizon, 10);
    EXPECT_NEAR(v.partial_sums[1].value, 2.9289682539682538, 1e-12);
    EXPECT_EQ(to_string(v.status), "Diverges");
}

TEST(ClassifySeries, TableIsUnknown) {
    const ApproxFunction psi = ApproxFunction::table({{BigInt(1), BigRational(1, 2)}, {BigInt(10), BigRational(1, 100)}});
    EXPECT_EQ(classify_series(psi, 1, 1, 100).status, SeriesStatus::Unknown);
}

TEST(ClassifyReturnSeries, FullLevelsUseCondensation) {
    const long levels[] = {1, 2, 3, 4, 5, 6};
    const SeriesVerdict full = classify_return_series(ApproxFunction::power_log(1, 1), 1, 1, levels, 6);
    EXPECT_EQ(full.status, SeriesStatus::Diverges);
    EXPECT_NEAR(full.partial_sums.back().value, 6.0, 1e-12);
    const long sparse[] = {1, 3, 6};
    EXPECT_EQ(classify_return_series(ApproxFunction::power_log(1, 1), 1, 1, sparse, 6).status,
              SeriesStatus::Unknown);
}

TEST(GammaSequence, GoldenClaimsHoldAndGammaStaysLarge) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 10);
    const CounterpartReport r = gamma_sequence(best, 1, 1);
    ASSERT_EQ(r.k.size(), 8u);
    EXPECT_EQ(r.k.front(), 2u);
    for (bool b : r.U_lt_V) {
        EXPECT_TRUE(b);
    }
    for (bool b : r.U_next_le_V) {
        EXPECT_TRUE(b);
    }
    EXPECT_TRUE(r.V_increasing);
    for (const RootReal& g : r.gamma) {
        EXPECT_TRUE(certainly_less(RootReal(lit("1/4")), g));
    }
    EXPECT_LE(r.gamma_sum.lo, r.gamma_sum.hi);
}

TEST(GammaSequence, NeedsThreeEntries) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 2);
    EXPECT_THROW(gamma_sequence(best, 1, 1), InsufficientData);
}

TEST(BAlphaTest, RangeOutsideHorizonThrows) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 6);
    const CounterpartReport r = gamma_sequence(best, 1, 1);
    const std::vector<BigRational> b{BigRational(1, 3)};
    EXPECT_THROW(b_alpha_test(b, best, r, 2, 1, 3), InvalidArgument);
    EXPECT_THROW(b_alpha_test(b, best, r, 2, 2, 9), InvalidArgument);
    // gamma_k > 1/2 for the golden ratio while ||b.y||_Z <= 1/2, so alpha = 1 already fails.
    EXPECT_FALSE(b_alpha_test(b, best, r, 1, 2, 5));
}

TEST(IntervalCheck, AlphaMustExceedN) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 8);
    const CounterpartReport r = gamma_sequence(best, 1, 1);
    const std::vector<BigRational> b{BigRational(1, 3)};
    EXPECT_THROW(verify_prop_5_1(kGolden, b, 1, best, r, Window{2, 10}), InvalidArgument);
}

TEST(IntervalCheck, GoldenPreconditionFailsHonestly) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 10);
    const CounterpartReport r = gamma_sequence(best, 1, 1);
    const std::vector<BigRational> b{BigRational(1, 3)};
    const Prop51Report rep = verify_prop_5_1(kGolden, b, BigRational(11, 10), best, r, Window{3, 20});
    EXPECT_FALSE(rep.precondition);
    EXPECT_EQ(rep.tested, 0u);
    EXPECT_LE(rep.k_first, rep.k_last);
}

TEST(KeyInequality, RandomInstancesHold) {
    const BestApproxSequence best = best_approximations_from_cf(lit("(-1+1*sqrt(5))/2"), 12);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(0, 999);
    std::uniform_int_distribution<long> qd(-300, 300);
    std::uniform_int_distribution<std::size_t> kd(0, best.entries.size() - 1);
    for (int t = 0; t < 300; ++t) {
        const std::vector<BigRational> b{BigRational(num(rng), 1000)};
        const IntVec q({qd(rng)});
        EXPECT_TRUE(key_inequality_check(kGolden, b, q, best.entries[kd(rng)].y));
    }
}

TEST(EstimateExponents, GoldenHomogeneousExponentNearOne) {
    const BigInt xs[] = {16, 64, 256, 1024, 4096};
    const ExponentEstimate e = estimate_exponents(kGolden, std::vector<BigRational>{BigRational(1, 3)}, xs);
    ASSERT_EQ(e.homogeneous.size(), 5u);
    ASSERT_EQ(e.inhomogeneous.size(), 5u);
    EXPECT_GT(e.what_hat, 0.7);
    EXPECT_LT(e.what_hat, 1.3);
    for (std::size_t i = 1; i < 5; ++i) {
        EXPECT_TRUE(certainly_less_equal(*e.homogeneous[i].best, *e.homogeneous[i - 1].best));
    }
}

TEST(EstimateExponents, ExactHitIsInfinite) {
    const BigInt xs[] = {4, 8};
    const ExponentEstimate e = estimate_exponents(ApproxMatrix::scalar(lit("1/3")),
                                                  std::vector<BigRational>{BigRational(2, 3)}, xs);
    EXPECT_TRUE(e.inhomogeneous.back().exact_hit);
    EXPECT_TRUE(std::isinf(e.w_hat));
}
