#pragma once

#include "dioph/exact_real.hpp"
#include "dioph/matrix.hpp"
#include "dioph/orbit.hpp"
#include "dioph/root_real.hpp"

#include <optional>
#include <vector>

namespace dioph {

/// h = X^-n C^-m, C1 = (h+1) C / 2, X1 = (h+1) X / 2.
struct TransferBounds {
    RootReal C;
    BigInt X;
    ExactReal h;
    RootReal C1;
    ExactReal X1;
    std::size_t m = 1;
    std::size_t n = 1;
};

/// Throws Unsupported if h is not an element of the field of C.
TransferBounds transfer_bounds(const RootReal& C, const BigInt& X, std::size_t m, std::size_t n);

/// First q in enumeration order with ||q|| <= floor(X1) and ||Aq - b||_Z <= C1.
std::optional<IntVec> solve_inhomogeneous(const ApproxMatrix& A, std::span<const BigRational> b, const RootReal& C1,
                                          const ExactReal& X1, const EnumerationOptions& opts = {});

struct TargetOutcome {
    std::vector<BigRational> b;
    std::optional<IntVec> witness;
    std::optional<ExactReal> lhs;  // ||A q - b||_Z at the witness
    double slack = 0.0;            // C1 - lhs, diagnostic only
};

struct CorollaryReport {
    ExactReal epsilon;
    long ell = 0;
    TransferBounds bounds;
    std::vector<TargetOutcome> targets;
    std::size_t successes = 0;
    bool violation = false;  // some target had no witness
};

/// Checks the inhomogeneous guarantee at a verified return level for every
/// target. Throws InvalidArgument if ell is not a return level of A.
CorollaryReport verify_corollary_3_3(const ApproxMatrix& A, const ExactReal& epsilon, long ell,
                                     const std::vector<std::vector<BigRational>>& targets,
                                     const EnumerationOptions& opts = {}, unsigned threads = 1);

} // namespace dioph
