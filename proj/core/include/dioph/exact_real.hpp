#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline constexpr std::size_t kDefaultPrecisionBudget = 64;

/// Closed interval with exact rational endpoints.
struct RationalInterval {
    BigRational lo;
    BigRational hi;

    BigRational width() const { return hi - lo; }
    BigRational midpoint() const { return (lo + hi) / 2; }
};

/// Outcome of a certified comparison. Uncertain carries the width of the
/// enclosure that failed to separate the operands.
struct Ordering {
    enum class Kind { Less, Equal, Greater, Uncertain };

    Kind kind = Kind::Equal;
    BigRational width;

    static Ordering less() { return {Kind::Less, 0}; }
    static Ordering equal() { return {Kind::Equal, 0}; }
    static Ordering greater() { return {Kind::Greater, 0}; }
    static Ordering uncertain(BigRational w) { return {Kind::Uncertain, std::move(w)}; }

    bool decided() const { return kind != Kind::Uncertain; }
    bool is_less() const { return kind == Kind::Less; }
    bool is_equal() const { return kind == Kind::Equal; }
    bool is_greater() const { return kind == Kind::Greater; }

    Ordering reversed() const;
    std::string_view name() const;
};

/// The single irrational quantity theta over which a family of numbers is
/// expressed: either sqrt(d) for squarefree d >= 2, or a real number given by
/// a finite prefix of its simple continued fraction expansion.
class Generator {
public:
    enum class Kind { Sqrt, ContinuedFraction };

    static std::shared_ptr<const Generator> make_sqrt(const BigInt& d);
    static std::shared_ptr<const Generator> make_continued_fraction(
        std::vector<BigInt> partial_quotients, std::size_t precision_budget = kDefaultPrecisionBudget);

    Kind kind() const { return kind_; }
    const BigInt& radicand() const { return radicand_; }
    std::span<const BigInt> partial_quotients() const { return quotients_; }
    std::size_t precision_budget() const { return budget_; }

    /// Number of partial quotients an enclosure may use: min(list length, budget).
    std::size_t usable_quotients() const;

    /// theta lies in the returned interval when a_0..a_{count-1} are used.
    RationalInterval cf_enclosure(std::size_t count) const;

    /// sqrt(d) enclosure with absolute width 2^-bits.
    RationalInterval sqrt_enclosure(unsigned bits) const;

    bool same_as(const Generator& other) const;
    std::string literal() const;

private:
    Generator() = default;

    Kind kind_ = Kind::Sqrt;
    BigInt radicand_;
    std::vector<BigInt> quotients_;
    std::size_t budget_ = kDefaultPrecisionBudget;
    // convergents p_k/q_k, k = 0..len-1
    std::vector<BigInt> p_;
    std::vector<BigInt> q_;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// An exactly comparable real number: a polynomial with rational coefficients
/// in one generator theta. Quadratic numbers are kept reduced to a + b*sqrt(d);
/// continued-fraction numbers may carry higher powers of theta.
class ExactReal {
public:
    enum class Kind { Rational, Quadratic, CFReal };

    ExactReal() : coeffs_{BigRational(0)} {}
    ExactReal(long v) : coeffs_{BigRational(v)} {}  // NOLINT(google-explicit-constructor)
    ExactReal(const BigInt& v) : coeffs_{BigRational(v)} {}  // NOLINT
    ExactReal(BigRational v);  // NOLINT

    static ExactReal rational(const BigInt& num, const BigInt& den);
    /// a + b*sqrt(d); d must be squarefree and >= 2.
    static ExactReal quadratic(const BigRational& a, const BigRational& b, const BigInt& d);
    /// sqrt(k) for any k >= 0, with square factors extracted.
    static ExactReal sqrt(const BigInt& k);
    static ExactReal continued_fraction(std::vector<BigInt> partial_quotients,
                                        std::size_t precision_budget = kDefaultPrecisionBudget);
    static ExactReal from_generator(GeneratorPtr gen, std::vector<BigRational> coeffs);

    Kind kind() const;
    bool is_rational() const { return coeffs_.size() == 1; }
    /// Throws InvalidArgument unless is_rational().
    const BigRational& as_rational() const;
    const GeneratorPtr& generator() const { return gen_; }
    std::span<const BigRational> coefficients() const { return coeffs_; }

    ExactReal operator-() const;
    ExactReal& operator+=(const ExactReal& rhs);
    ExactReal& operator-=(const ExactReal& rhs);
    ExactReal& operator*=(const ExactReal& rhs);
    ExactReal& operator/=(const ExactReal& rhs);
    friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
    friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
    friend ExactReal operator*(ExactReal a, const ExactReal& b) { return a *= b; }
    friend ExactReal operator/(ExactReal a, const ExactReal& b) { return a /= b; }

    ExactReal pow(unsigned e) const;
    ExactReal inverse() const;

    /// Enclosure of width at most 2^-bits, or the tightest the budget allows.
    RationalInterval enclose(unsigned bits) const;
    double approx() const;

    /// Canonical literal; parse_exact_real(to_string()) reproduces the value.
    std::string to_string() const;
    std::string to_decimal(int significant_digits = 12) const;

    /// Structural equality of canonical forms (not numeric comparison).
    bool identical(const ExactReal& other) const;

private:
    void normalize();
    void adopt_generator(const ExactReal& other);

    GeneratorPtr gen_;
    std::vector<BigRational> coeffs_;
};

Ordering sign(const ExactReal& x);
Ordering compare(const ExactReal& x, const ExactReal& y);

// Certified predicates; throw PrecisionExhausted when undecidable.
bool certainly_less(const ExactReal& x, const ExactReal& y);
bool certainly_less_equal(const ExactReal& x, const ExactReal& y);
bool certainly_equal(const ExactReal& x, const ExactReal& y);
int certain_sign(const ExactReal& x);

BigInt floor(const ExactReal& x);
ExactReal abs(const ExactReal& x);
ExactReal max(const ExactReal& x, const ExactReal& y);
ExactReal min(const ExactReal& x, const ExactReal& y);

/// ||x||_Z, the distance to the nearest integer, in [0, 1/2].
ExactReal dist_to_int(const ExactReal& x);
/// max_i |v_i|.
ExactReal sup_norm(std::span<const ExactReal> v);
/// max_i ||v_i||_Z, the sup-norm distance to Z^m.
ExactReal dist_to_int_vec(std::span<const ExactReal> v);

ExactReal parse_exact_real(std::string_view text);

std::string to_string(const BigRational& r);
std::string decimal(const BigRational& r, int significant_digits = 12);

} // namespace dioph
