#pragma once

#include "dioph/approx_function.hpp"
#include "dioph/lattice.hpp"
#include "dioph/matrix.hpp"
#include "dioph/orbit.hpp"
#include "dioph/root_real.hpp"
#include "dioph/sampling.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dioph {

enum class SeriesStatus { Converges, Diverges, Unknown };

std::string_view to_string(SeriesStatus s);

struct PartialSum {
    BigInt horizon;
    double value = 0.0;
};

struct SeriesVerdict {
    SeriesStatus status = SeriesStatus::Unknown;
    std::vector<PartialSum> partial_sums;
    std::string rationale;
    /// Verdict read off the tail of the partial sums alone (Unknown if inconclusive).
    SeriesStatus trend = SeriesStatus::Unknown;
    double tail_exponent = 0.0;  // fitted decay exponent of dyadic block sums
};

/// sum over q >= 1 of q^(n-1) psi(q)^s, checked to horizon Q.
SeriesVerdict classify_series(const ApproxFunction& psi, const BigRational& s, std::size_t n,
                              std::uint64_t horizon = 1000000);

/// sum over levels of 2^(l n) psi(2^l)^s. Closed-form verdict only for full
/// levels 1..ell_max and PowerLog psi.
SeriesVerdict classify_return_series(const ApproxFunction& psi, const BigRational& s, std::size_t n,
                                     std::span<const long> levels, long ell_max);

struct CounterpartReport {
    std::size_t m = 1;
    std::size_t n = 1;
    std::vector<std::size_t> k;      // 1-based indices 2..K-1
    std::vector<ExactReal> gamma_power;  // gamma_k^(m+n)
    std::vector<RootReal> gamma;
    std::vector<RootReal> U;
    std::vector<RootReal> V;
    std::vector<bool> U_lt_V;       // U_k < V_k
    std::vector<bool> U_next_le_V;  // U_{k+1} <= V_k, one fewer entry
    bool V_increasing = false;
    std::vector<double> gamma_partial_sums;
    RationalInterval gamma_sum;
};

/// gamma_k^(m+n) = max(Y_k^m M_{k-1}^n, Y_{k+1}^m M_k^n), U_k^(n(m+n)) = Y_k^(m(m+n)) / gamma_k^(m(m+n)),
/// V_k^(m+n) = gamma_k^(m+n) / M_k^(m+n). Throws InsufficientData for fewer than three entries.
CounterpartReport gamma_sequence(const BestApproxSequence& best, std::size_t m, std::size_t n);

/// ||b.y_k||_Z > alpha gamma_k for every 1-based k in [k_first, k_last].
bool b_alpha_test(std::span<const BigRational> b, const BestApproxSequence& best, const CounterpartReport& gammas,
                  const BigRational& alpha, std::size_t k_first, std::size_t k_last);

struct Prop51Report {
    bool precondition = false;  // b passed b_alpha_test on the covering k range
    std::size_t k_first = 0;
    std::size_t k_last = 0;
    std::vector<std::pair<BigInt, BigInt>> ranges;  // integer [ceil U_k, ceil V_k - 1] per k
    std::uint64_t tested = 0;
    std::uint64_t violations = 0;
    std::vector<std::pair<IntVec, std::size_t>> violating;  // (q, binding k)
    std::vector<std::uint64_t> binding_histogram;          // per k in [k_first, k_last]
};

/// For alpha > n, checks ||q||^(n/m) ||Aq - b||_Z > (alpha - n)/m for every q in
/// the window. Throws CoverageGap if the [U_k, V_k) do not cover the window.
Prop51Report verify_prop_5_1(const ApproxMatrix& A, std::span<const BigRational> b, const BigRational& alpha,
                             const BestApproxSequence& best, const CounterpartReport& gammas, const Window& w,
                             const EnumerationOptions& opts = {});

/// ||b.y||_Z <= m ||y|| ||Aq - b||_Z + n ||q|| ||tA y||_Z.
bool key_inequality_check(const ApproxMatrix& A, std::span<const BigRational> b, const IntVec& q, const IntVec& y);

struct ExponentPoint {
    BigInt X;
    std::optional<ExactReal> best;  // min distance over the box, none if empty
    double exponent = 0.0;          // log(1/best) / log X
    bool exact_hit = false;
};

struct ExponentEstimate {
    std::vector<ExponentPoint> inhomogeneous;  // ||Aq - b||_Z over ||q|| < X
    std::vector<ExponentPoint> homogeneous;    // ||tA y||_Z over 0 < ||y|| < X
    double w_hat = 0.0;                        // max over schedule; +inf on exact hit
    double what_hat = 0.0;                     // min over the second half of the schedule
};

ExponentEstimate estimate_exponents(const ApproxMatrix& A, std::optional<std::vector<BigRational>> b,
                                    std::span<const BigInt> X_schedule, const EnumerationOptions& opts = {});

} // namespace dioph
