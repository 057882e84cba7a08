#pragma once

#include "dioph/approx_function.hpp"
#include "dioph/exact_real.hpp"
#include "dioph/matrix.hpp"
#include "dioph/root_real.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dioph {

__extension__ typedef unsigned __int128 u128;

/// Torus points and thresholds are handled in fixed point with unit 2^-64.
/// Threshold enclosures may exceed 1/2, so they use 128 bits (capped at 2^65).
struct FixedEnclosure {
    u128 lo = 0;
    u128 hi = 0;
};

FixedEnclosure to_fixed(const RationalInterval& iv);

/// A threshold t(r) depending only on the sup-norm r of q.
class NormThreshold {
public:
    virtual ~NormThreshold() = default;
    virtual FixedEnclosure fixed_at(std::uint64_t norm) const = 0;
    /// Sign of dist - t(norm).
    virtual Ordering compare_at(const ExactReal& dist, std::uint64_t norm) const = 0;
    virtual std::string describe() const = 0;
};

class ConstantThreshold final : public NormThreshold {
public:
    explicit ConstantThreshold(RootReal value);
    FixedEnclosure fixed_at(std::uint64_t) const override { return fixed_; }
    Ordering compare_at(const ExactReal& dist, std::uint64_t) const override;
    std::string describe() const override { return value_.to_string(); }
    const RootReal& value() const { return value_; }

private:
    RootReal value_;
    FixedEnclosure fixed_;
};

class PsiThreshold final : public NormThreshold {
public:
    explicit PsiThreshold(ApproxFunction psi) : psi_(std::move(psi)) {}
    FixedEnclosure fixed_at(std::uint64_t norm) const override;
    Ordering compare_at(const ExactReal& dist, std::uint64_t norm) const override;
    std::string describe() const override { return psi_.to_string(); }
    const ApproxFunction& psi() const { return psi_; }

private:
    ApproxFunction psi_;
};

enum class Relation { Less, LessEqual };

struct EnumerationOptions {
    std::uint64_t budget = std::uint64_t{1} << 22;
};

/// #{q in Z^n : lo <= ||q|| <= hi}.
BigInt annulus_size(std::size_t n, std::uint64_t lo, std::uint64_t hi);
/// Throws BudgetExceeded when the annulus holds more than budget points.
void require_budget(std::size_t n, std::uint64_t lo, std::uint64_t hi, std::uint64_t budget);

/// Visits every q with ||q|| = r in lexicographic order; stops when fn returns true.
template <class Fn>
bool for_each_in_shell(std::size_t n, std::int64_t r, Fn&& fn) {
    std::vector<std::int64_t> q(n, 0);
    if (r == 0) {
        return fn(std::span<const std::int64_t>(q));
    }
    // A prefix that has not yet reached |q_j| = r forces the last coordinate to +-r.
    auto rec = [&](auto&& self, std::size_t j, bool hit) -> bool {
        if (j + 1 == n && !hit) {
            for (std::int64_t v : {-r, r}) {
                q[j] = v;
                if (fn(std::span<const std::int64_t>(q))) {
                    return true;
                }
            }
            return false;
        }
        for (std::int64_t v = -r; v <= r; ++v) {
            q[j] = v;
            const bool h = hit || v == -r || v == r;
            if (j + 1 == n) {
                if (fn(std::span<const std::int64_t>(q))) {
                    return true;
                }
            } else if (self(self, j + 1, h)) {
                return true;
            }
        }
        return false;
    };
    return rec(rec, 0, false);
}

/// Shells lo..hi in increasing norm, lexicographic within a shell.
template <class Fn>
bool for_each_in_annulus(std::size_t n, std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    for (std::uint64_t r = lo; r <= hi; ++r) {
        if (for_each_in_shell(n, static_cast<std::int64_t>(r), fn)) {
            return true;
        }
        if (r == std::numeric_limits<std::uint64_t>::max()) {
            break;
        }
    }
    return false;
}

/// Entries of A rounded to 2^-64 with a per-entry error bound in units.
class FixedPointMatrix {
public:
    explicit FixedPointMatrix(const ApproxMatrix& A);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    /// out_i = sum_j q_j A_ij mod 1 in units.
    void apply(std::span<const std::int64_t> q, std::span<std::uint64_t> out) const;
    /// Bound on |true - fixed| over all rows, in units.
    u128 error(std::span<const std::int64_t> q) const;

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::uint64_t> value_;
    std::vector<std::uint64_t> error_;
};

/// b mod 1 in units; error is 0 when b is a multiple of 2^-64.
struct FixedTarget {
    std::vector<BigRational> exact;
    std::vector<std::uint64_t> units;
    std::uint64_t error = 0;
};

FixedTarget encode_target(std::span<const BigRational> b, std::size_t m);

/// Sup-norm torus distance of a point given in units, as units in [0, 2^63].
inline std::uint64_t torus_dist(std::uint64_t x) { return x <= (std::uint64_t{1} << 63) ? x : std::uint64_t(0) - x; }

/// 1 = satisfied, 0 = violated, -1 = needs exact evaluation.
inline int decide_fixed(std::uint64_t d, u128 e, const FixedEnclosure& t, Relation rel) {
    const u128 up = u128(d) + e;
    if (rel == Relation::Less) {
        if (up < t.lo) {
            return 1;
        }
        if (u128(d) >= t.hi + e) {
            return 0;
        }
    } else {
        if (up <= t.lo) {
            return 1;
        }
        if (u128(d) > t.hi + e) {
            return 0;
        }
    }
    return -1;
}

/// Exact decision of ||Aq - b||_Z rel t(||q||); throws PrecisionExhausted if undecidable.
bool decide_exact(const ApproxMatrix& A, std::span<const std::int64_t> q, std::span<const BigRational> b,
                  const NormThreshold& t, std::uint64_t norm, Relation rel);

/// Fixed-point threshold enclosures for every norm in [lo, hi].
/// Holds a reference to the threshold, which must outlive the table.
class ThresholdTable {
public:
    ThresholdTable(const NormThreshold& t, std::uint64_t lo, std::uint64_t hi);
    const FixedEnclosure& at(std::uint64_t norm) const { return fixed_[norm - lo_]; }
    const NormThreshold& threshold() const { return *t_; }
    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }

private:
    const NormThreshold* t_;
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<FixedEnclosure> fixed_;
};

/// The points Aq for lo <= ||q|| <= hi, precomputed in enumeration order so
/// that many targets can be scanned against one window.
class OrbitTable {
public:
    OrbitTable(const ApproxMatrix& A, std::uint64_t lo, std::uint64_t hi, const EnumerationOptions& opts = {});

    const ApproxMatrix& matrix() const { return A_; }
    std::size_t size() const { return norm_.size(); }
    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t norm(std::size_t i) const { return norm_[i]; }
    std::span<const std::int64_t> q(std::size_t i) const { return {q_.data() + i * n_, n_}; }
    IntVec vec(std::size_t i) const { return IntVec::from_int64(q(i)); }

    /// Torus distance of A q_i - b in units and its error bound.
    std::uint64_t fixed_dist(std::size_t i, const FixedTarget& b) const;
    u128 fixed_error(std::size_t i, const FixedTarget& b) const { return u128(error_[i]) + b.error; }
    ExactReal exact_dist(std::size_t i, std::span<const BigRational> b) const;

    bool satisfies(std::size_t i, const FixedTarget& b, const ThresholdTable& t, Relation rel) const;

    /// First index in order whose point satisfies the relation, among norms <= max_norm.
    std::optional<std::size_t> find_first(const FixedTarget& b, const ThresholdTable& t, Relation rel,
                                          std::uint64_t max_norm = std::numeric_limits<std::uint64_t>::max()) const;

    template <class Fn>
    void for_each_hit(const FixedTarget& b, const ThresholdTable& t, Relation rel, Fn&& fn) const {
        for (std::size_t i = 0; i < size(); ++i) {
            if (satisfies(i, b, t, rel)) {
                fn(i);
            }
        }
    }

private:
    ApproxMatrix A_;
    std::size_t m_;
    std::size_t n_;
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::int64_t> q_;
    std::vector<std::uint64_t> norm_;
    std::vector<std::uint64_t> value_;  // m per point
    std::vector<std::uint64_t> error_;  // saturated
};

/// First q in enumeration order with lo <= ||q|| <= hi and ||Aq - b|| rel t(||q||).
std::optional<IntVec> search_first(const ApproxMatrix& A, std::span<const BigRational> b, std::uint64_t lo,
                                   std::uint64_t hi, const NormThreshold& t, Relation rel,
                                   const EnumerationOptions& opts = {});

/// Converts a window bound to the 64-bit norm range, throwing BudgetExceeded if it is too large.
std::uint64_t norm_bound(const BigInt& v);

} // namespace dioph
