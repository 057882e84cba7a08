#include "dioph/root_real.hpp"

#include "dioph/error.hpp"

#include <mpfr.h>

#include <numeric>

namespace dioph {

namespace {

BigRational mpfr_to_rational(mpfr_srcptr x) {
    BigRational r;
    mpfr_get_q(r.get_mpq_t(), x);
    return r;
}

/// Outward-rounded k-th root of a nonnegative rational interval.
RationalInterval root_interval(const RationalInterval& iv, unsigned k, unsigned bits) {
    if (k == 1) {
        return iv;
    }
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 64;
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, iv.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, iv.hi.get_mpq_t(), MPFR_RNDU);
    if (mpfr_sgn(lo) < 0) {
        mpfr_set_zero(lo, 1);
    }
    mpfr_rootn_ui(lo, lo, k, MPFR_RNDD);
    mpfr_rootn_ui(hi, hi, k, MPFR_RNDU);
    RationalInterval out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
    mpfr_clear(lo);
    mpfr_clear(hi);
    return out;
}

/// Exact k-th root of a nonnegative integer, if it is a perfect power.
bool exact_root(const BigInt& v, unsigned k, BigInt& out) {
    return mpz_root(out.get_mpz_t(), v.get_mpz_t(), k) != 0;
}

} // namespace

RootReal::RootReal(ExactReal value) : num_(std::move(value)), den_(1L) {
    if (certain_sign(num_) < 0) {
        throw InvalidArgument("RootReal requires a nonnegative value: " + num_.to_string());
    }
}

RootReal::RootReal(ExactReal num, ExactReal den, unsigned root) : num_(std::move(num)), den_(std::move(den)), root_(root) {
    if (root_ == 0) {
        throw InvalidArgument("root index must be positive");
    }
    if (certain_sign(den_) <= 0) {
        throw InvalidArgument("RootReal denominator must be positive: " + den_.to_string());
    }
    if (certain_sign(num_) < 0) {
        throw InvalidArgument("RootReal numerator must be nonnegative: " + num_.to_string());
    }
    const bool foldable = den_.is_rational() || (den_.kind() == ExactReal::Kind::Quadratic);
    if (foldable && !(den_.is_rational() && den_.as_rational() == 1)) {
        num_ /= den_;
        den_ = ExactReal(1L);
    }
}

bool RootReal::is_exact() const { return root_ == 1 && den_.is_rational() && den_.as_rational() == 1; }

ExactReal RootReal::exact() const {
    const RootReal s = simplified();
    if (!s.is_exact()) {
        throw InvalidArgument("value is not an exact field element: " + to_string());
    }
    return s.num_;
}

RootReal RootReal::pow(unsigned p) const {
    // ((num/den)^(1/k))^p = ((num/den)^(p/g))^(1/(k/g)), g = gcd(p, k)
    const unsigned g = std::gcd(p, root_);
    if (g == 0) {
        return RootReal(ExactReal(1L));
    }
    return RootReal(num_.pow(p / g), den_.pow(p / g), root_ / g);
}

RootReal RootReal::inverse() const {
    if (certain_sign(num_) == 0) {
        throw InvalidArgument("inverse of zero");
    }
    return RootReal(den_, num_, root_);
}

RootReal operator*(const RootReal& a, const RootReal& b) {
    const unsigned l = std::lcm(a.root_, b.root_);
    const unsigned ea = l / a.root_;
    const unsigned eb = l / b.root_;
    return RootReal(a.num_.pow(ea) * b.num_.pow(eb), a.den_.pow(ea) * b.den_.pow(eb), l);
}

RootReal RootReal::simplified() const {
    if (root_ == 1 || !num_.is_rational() || !den_.is_rational()) {
        return *this;
    }
    const BigRational r = num_.as_rational() / den_.as_rational();
    for (unsigned d = root_; d > 1; --d) {
        if (root_ % d != 0) {
            continue;
        }
        BigInt rn, rd;
        if (exact_root(r.get_num(), d, rn) && exact_root(r.get_den(), d, rd)) {
            return RootReal(ExactReal(BigRational(rn, rd)), root_ / d);
        }
    }
    return RootReal(ExactReal(r), root_);
}

RationalInterval RootReal::enclose(unsigned bits) const {
    const RationalInterval n = num_.enclose(bits + 16);
    const RationalInterval d = den_.enclose(bits + 16);
    BigRational nlo = n.lo < 0 ? BigRational(0) : n.lo;
    RationalInterval ratio{nlo / d.hi, n.hi / d.lo};
    return root_interval(ratio, root_, bits);
}

double RootReal::approx() const {
    if (is_exact()) {
        return num_.approx();
    }
    return enclose(64).midpoint().get_d();
}

BigInt RootReal::floor() const {
    const RationalInterval iv = enclose(64);
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), iv.lo.get_num_mpz_t(), iv.lo.get_den_mpz_t());
    while (certainly_less_equal(RootReal(ExactReal(BigInt(f + 1))), *this)) {
        ++f;
    }
    while (certainly_less(*this, RootReal(ExactReal(f)))) {
        --f;
    }
    return f;
}

BigInt RootReal::ceil() const {
    BigInt f = floor();
    if (certainly_equal(RootReal(ExactReal(f)), *this)) {
        return f;
    }
    return f + 1;
}

std::string RootReal::to_string() const {
    std::string inner = num_.to_string();
    if (!(den_.is_rational() && den_.as_rational() == 1)) {
        inner = "(" + inner + ")/(" + den_.to_string() + ")";
    }
    if (root_ == 1) {
        return inner;
    }
    return "root(" + std::to_string(root_) + "," + inner + ")";
}

std::string RootReal::to_decimal(int digits) const {
    if (is_exact()) {
        return num_.to_decimal(digits);
    }
    return decimal(enclose(static_cast<unsigned>(digits) * 4 + 64).midpoint(), digits);
}

Ordering compare(const RootReal& a, const RootReal& b) {
    const unsigned l = std::lcm(a.root(), b.root());
    const unsigned ea = l / a.root();
    const unsigned eb = l / b.root();
    const ExactReal lhs = a.numerator().pow(ea) * b.denominator().pow(eb);
    const ExactReal rhs = b.numerator().pow(eb) * a.denominator().pow(ea);
    return compare(lhs, rhs);
}

namespace {
Ordering decided(const RootReal& a, const RootReal& b) {
    const Ordering o = compare(a, b);
    if (!o.decided()) {
        throw PrecisionExhausted("cannot decide comparison of " + a.to_string() + " and " + b.to_string());
    }
    return o;
}
} // namespace

bool certainly_less(const RootReal& a, const RootReal& b) { return decided(a, b).is_less(); }
bool certainly_less_equal(const RootReal& a, const RootReal& b) { return !decided(a, b).is_greater(); }
bool certainly_equal(const RootReal& a, const RootReal& b) { return decided(a, b).is_equal(); }

RootReal pow2_fraction(long p, unsigned q) {
    BigRational base(1);
    if (p >= 0) {
        mpz_mul_2exp(base.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<mp_bitcnt_t>(p));
    } else {
        mpz_mul_2exp(base.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<mp_bitcnt_t>(-p));
    }
    return RootReal(ExactReal(base), q);
}

} // namespace dioph
