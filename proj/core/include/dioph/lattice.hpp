#pragma once

#include "dioph/exact_real.hpp"
#include "dioph/matrix.hpp"
#include "dioph/orbit.hpp"
#include "dioph/root_real.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dioph {

/// Levels l in [1, ell_max] at which no 0 < ||q|| < 2^l has ||Aq||_Z < eps 2^(-(n/m) l).
struct ReturnSequence {
    ExactReal epsilon;
    long ell_max = 0;
    std::vector<long> levels;
};

struct BadWitness {
    RootReal min_value;  // ||q||^(n/m) ||Aq||_Z
    IntVec argmin;
};

struct BestApprox {
    IntVec y;
    BigInt Y;
    ExactReal M;  // ||tA y||_Z
};

/// Records of ||tA y||_Z over y in Z^m, scanned up to `horizon`.
struct BestApproxSequence {
    std::vector<BestApprox> entries;
    BigInt horizon;
};

struct ContinuedFraction {
    std::vector<BigInt> quotients;
    bool terminated = false;                 // rational input, expansion is complete
    std::optional<std::size_t> period_start;  // index of the first periodic quotient
    std::vector<BigInt> period;
};

/// Some q with 0 < ||q|| < X and ||Aq||_Z < C (first in enumeration order), or none.
std::optional<IntVec> solve_homogeneous(const ApproxMatrix& A, const RootReal& C, const BigInt& X,
                                        const EnumerationOptions& opts = {});

/// eps 2^(-(n/m) l), kept exact as an m-th root.
RootReal return_threshold(const ExactReal& epsilon, long ell, std::size_t m, std::size_t n);

ReturnSequence return_sequence(const ApproxMatrix& A, const ExactReal& epsilon, long ell_max,
                               const EnumerationOptions& opts = {});

/// min over 0 < ||q|| <= Q of ||q||^(n/m) ||Aq||_Z; the first minimizer in enumeration order.
BadWitness bad_witness(const ApproxMatrix& A, const BigInt& Q, const EnumerationOptions& opts = {});

/// Exhaustive record scan over ||y|| = 1..Y_max; each shell contributes at most
/// its lexicographically first minimizer. Throws RankDeficient unless check_rank
/// holds (1x1 continued-fraction entries are assumed irrational).
BestApproxSequence best_approximations(const ApproxMatrix& A, const BigInt& Y_max,
                                       const EnumerationOptions& opts = {});

/// 1x1 case from the convergents of alpha: the first `count` records, with
/// y = -q_k to agree with the scan's lexicographic tie-break.
BestApproxSequence best_approximations_from_cf(const ExactReal& alpha, std::size_t count);

/// Whether rows(A) and e_1..e_n are Z-linearly independent in R^n.
bool check_rank(const ApproxMatrix& A);

ContinuedFraction continued_fraction(const ExactReal& x, std::size_t k);

/// q_0, q_1, ... of the convergents of [a_0; a_1, ...].
std::vector<BigInt> convergent_denominators(std::span<const BigInt> quotients);

} // namespace dioph
