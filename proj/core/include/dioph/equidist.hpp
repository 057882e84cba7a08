#pragma once

#include "dioph/matrix.hpp"
#include "dioph/orbit.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dioph {

struct WeylSumResult {
    std::vector<BigInt> c;
    std::uint64_t N = 0;
    double real = 0.0;
    double imag = 0.0;
    double magnitude = 0.0;
    double normalized = 0.0;    // magnitude / (2N+1)^n
    double error_radius = 0.0;  // bound on |computed sum - true sum|
};

/// sum over ||q|| <= N of exp(2 pi i c.Aq), in enumeration order.
WeylSumResult weyl_sum(const ApproxMatrix& A, std::span<const BigInt> c, std::uint64_t N,
                       const EnumerationOptions& opts = {});

/// #{||q|| <= N : ||Aq - center||_Z < radius} / (2N+1)^n, exactly.
BigRational counting_ratio(const ApproxMatrix& A, std::span<const BigRational> center, const BigRational& radius,
                           std::uint64_t N, const EnumerationOptions& opts = {});

struct EquidConstantEstimate {
    BigRational c_hat;        // max count(2B, l) / (l^n |B|)
    BigRational recommended;  // 2 c_hat
    std::uint64_t argmax_l = 0;
    std::size_t argmax_ball = 0;
    std::vector<std::vector<std::uint64_t>> counts;  // [ball][l index] = count(2B, l)
};

/// Balls B(center_k, radius); |B| = (2 radius)^m and 2B has radius 2 radius.
EquidConstantEstimate estimate_equid_constant(const ApproxMatrix& A,
                                              const std::vector<std::vector<BigRational>>& centers,
                                              const BigRational& radius, std::span<const std::uint64_t> l_values,
                                              const EnumerationOptions& opts = {});

} // namespace dioph
