#include "dioph/equidist.hpp"
#include "dioph/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace dioph;

namespace {

const ApproxMatrix kSqrt2 = ApproxMatrix::scalar(ExactReal::sqrt(2));

} // namespace

TEST(WeylSum, SqrtTwoSmallN) {
    const BigInt c[] = {1};
    const WeylSumResult r = weyl_sum(kSqrt2, c, 1);
    EXPECT_NEAR(r.normalized, 0.238810790445878, 1e-13);
    EXPECT_LT(r.error_radius, 1e-15);
}

TEST(WeylSum, SqrtTwoLargeNIsSmall) {
    const BigInt c[] = {1};
    const WeylSumResult r = weyl_sum(kSqrt2, c, 10000);
    EXPECT_NEAR(r.normalized, 4.33119288833794e-5, 1e-12);
}

TEST(WeylSum, MatchesDirectComplexSum) {
    const ApproxMatrix A(1, 2, {ExactReal::sqrt(3), ExactReal::quadratic(BigRational(1, 3), BigRational(1, 2), 3)});
    const BigInt c[] = {2};
    const WeylSumResult r = weyl_sum(A, c, 7);
    const double a0 = std::sqrt(3.0);
    const double a1 = 1.0 / 3 + std::sqrt(3.0) / 2;
    std::complex<double> s = 0;
    for (int i = -7; i <= 7; ++i) {
        for (int j = -7; j <= 7; ++j) {
            s += std::polar(1.0, 2 * std::numbers::pi * 2 * (a0 * i + a1 * j));
        }
    }
    EXPECT_NEAR(r.real, s.real(), 1e-9);
    EXPECT_NEAR(r.imag, s.imag(), 1e-9);
}

TEST(WeylSum, ZeroFrequencyRejected) {
    const BigInt c[] = {0};
    EXPECT_THROW(weyl_sum(kSqrt2, c, 3), InvalidArgument);
}

TEST(CountingRatio, SqrtTwoBallAroundOrigin) {
    const std::vector<BigRational> center{BigRational(0)};
    const BigRational r = counting_ratio(kSqrt2, center, BigRational(1, 10), 10000);
    EXPECT_EQ(r, BigRational(4001, 20001));
}

TEST(CountingRatio, StrictBoundaryExcludesExactHit) {
    // A = 1/4: Aq mod 1 lands on 0, 1/4, 1/2, 3/4; distance 1/4 from 0 is not inside radius 1/4.
    const ApproxMatrix A = ApproxMatrix::scalar(ExactReal(BigRational(1, 4)));
    const std::vector<BigRational> center{BigRational(0)};
    EXPECT_EQ(counting_ratio(A, center, BigRational(1, 4), 4), BigRational(1, 3));  // q = 0, +-4
}

TEST(EquidConstant, GoldenEstimateIsNearOne) {
    const ApproxMatrix A = ApproxMatrix::scalar(parse_exact_real("(-1+1*sqrt(5))/2"));
    const std::vector<std::vector<BigRational>> centers{{BigRational(1, 2)}, {BigRational(1, 5)}};
    const std::uint64_t ls[] = {64, 256, 1024};
    const EquidConstantEstimate e = estimate_equid_constant(A, centers, BigRational(1, 16), ls);
    EXPECT_GT(e.c_hat, BigRational(1, 2));
    EXPECT_LT(e.c_hat, BigRational(6));
    EXPECT_EQ(e.recommended, 2 * e.c_hat);
    ASSERT_EQ(e.counts.size(), 2u);
    EXPECT_LE(e.counts[0][0], e.counts[0][1]);
}
