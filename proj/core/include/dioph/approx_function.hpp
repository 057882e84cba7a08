#pragma once

#include "dioph/exact_real.hpp"
#include "dioph/root_real.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

/// A positive nonincreasing approximation function psi on [1, inf).
///
/// PowerLog: psi(q) = c * q^-a * max(ln q, 1)^-beta.
/// Table:    psi(q) = value_j for the largest j with q_j <= q (value_0 below q_0).
class ApproxFunction {
public:
    enum class Kind { PowerLog, Table };

    static ApproxFunction power_log(BigRational c, BigRational a, BigRational beta = 0);
    static ApproxFunction table(std::vector<std::pair<BigInt, BigRational>> steps);

    Kind kind() const { return kind_; }
    const BigRational& c() const { return c_; }
    const BigRational& a() const { return a_; }
    const BigRational& beta() const { return beta_; }
    const std::vector<std::pair<BigInt, BigRational>>& steps() const { return steps_; }

    /// psi(q) as an exact root whenever no logarithm is involved.
    std::optional<RootReal> exact_at(const BigInt& q) const;
    /// Certified enclosure of psi(q) with relative width about 2^-bits.
    RationalInterval enclose_at(const BigInt& q, unsigned bits) const;
    /// Sign of x - psi(q); Uncertain only if refinement to 2^-4096 fails.
    Ordering compare_at(const ExactReal& x, const BigInt& q) const;
    double approx_at(double q) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::PowerLog;
    BigRational c_;
    BigRational a_;
    BigRational beta_;
    std::vector<std::pair<BigInt, BigRational>> steps_;
};

} // namespace dioph
