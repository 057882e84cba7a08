#pragma once

#include "dioph/exact_real.hpp"

#include <string>

namespace dioph {

/// A nonnegative real of the form (num / den)^(1/k) with ExactReal num >= 0,
/// den > 0. Covers every fractional power that appears in the approximation
/// exponents (n/m, m/n, n/(m+n)) while keeping all comparisons exact: two
/// roots are compared by raising both sides to the lcm of their indices.
class RootReal {
public:
    RootReal() : num_(0L), den_(1L) {}
    RootReal(ExactReal value);  // NOLINT(google-explicit-constructor)
    RootReal(long value) : RootReal(ExactReal(value)) {}  // NOLINT
    RootReal(BigRational value) : RootReal(ExactReal(std::move(value))) {}  // NOLINT
    RootReal(ExactReal num, ExactReal den, unsigned root);
    RootReal(ExactReal base, unsigned root) : RootReal(std::move(base), ExactReal(1L), root) {}

    const ExactReal& numerator() const { return num_; }
    const ExactReal& denominator() const { return den_; }
    unsigned root() const { return root_; }

    /// True when the value is a plain ExactReal (root 1, rational or foldable denominator).
    bool is_exact() const;
    /// Throws InvalidArgument unless is_exact().
    ExactReal exact() const;

    RootReal pow(unsigned p) const;
    RootReal inverse() const;
    friend RootReal operator*(const RootReal& a, const RootReal& b);
    friend RootReal operator/(const RootReal& a, const RootReal& b) { return a * b.inverse(); }

    /// Lowest root index and rational folding where possible; numerically identical.
    RootReal simplified() const;

    RationalInterval enclose(unsigned bits) const;
    double approx() const;
    BigInt floor() const;
    BigInt ceil() const;

    std::string to_string() const;
    std::string to_decimal(int significant_digits = 12) const;

private:
    ExactReal num_;
    ExactReal den_;
    unsigned root_ = 1;
};

Ordering compare(const RootReal& a, const RootReal& b);
bool certainly_less(const RootReal& a, const RootReal& b);
bool certainly_less_equal(const RootReal& a, const RootReal& b);
bool certainly_equal(const RootReal& a, const RootReal& b);

/// 2^(-p/q) as a RootReal.
RootReal pow2_fraction(long p, unsigned q);

} // namespace dioph
