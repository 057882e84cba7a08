#include "dioph/approx_function.hpp"

#include "dioph/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace dioph {

namespace {

BigRational mpfr_to_rational(mpfr_srcptr x) {
    BigRational r;
    mpfr_get_q(r.get_mpq_t(), x);
    return r;
}

} // namespace

ApproxFunction ApproxFunction::power_log(BigRational c, BigRational a, BigRational beta) {
    c.canonicalize();
    a.canonicalize();
    beta.canonicalize();
    if (c <= 0) {
        throw InvalidArgument("psi coefficient c must be positive");
    }
    if (a < 0) {
        throw InvalidArgument("psi exponent a must be nonnegative");
    }
    // Nonincreasing on [1, inf): on [e, inf) the log-derivative is (-a + (-beta)/ln q)/q.
    const bool monotone = (a > 0 && (beta >= 0 || -beta <= a)) || (a == 0 && beta >= 0);
    if (!monotone) {
        throw InvalidArgument("PowerLog psi is not nonincreasing for a=" + dioph::to_string(a) + ", beta=" + dioph::to_string(beta));
    }
    ApproxFunction f;
    f.kind_ = Kind::PowerLog;
    f.c_ = std::move(c);
    f.a_ = std::move(a);
    f.beta_ = std::move(beta);
    return f;
}

ApproxFunction ApproxFunction::table(std::vector<std::pair<BigInt, BigRational>> steps) {
    if (steps.empty()) {
        throw InvalidArgument("psi table must be nonempty");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        steps[i].second.canonicalize();
        if (steps[i].second <= 0) {
            throw InvalidArgument("psi table values must be positive");
        }
        if (i > 0 && (steps[i].first <= steps[i - 1].first || steps[i].second > steps[i - 1].second)) {
            throw InvalidArgument("psi table must have increasing q_j and nonincreasing values");
        }
    }
    ApproxFunction f;
    f.kind_ = Kind::Table;
    f.steps_ = std::move(steps);
    return f;
}

std::optional<RootReal> ApproxFunction::exact_at(const BigInt& q) const {
    if (q < 1) {
        throw InvalidArgument("psi is only defined for q >= 1");
    }
    if (kind_ == Kind::Table) {
        auto it = std::upper_bound(steps_.begin(), steps_.end(), q,
                                   [](const BigInt& v, const auto& s) { return v < s.first; });
        if (it == steps_.begin()) {
            return RootReal(ExactReal(steps_.front().second));
        }
        return RootReal(ExactReal(std::prev(it)->second));
    }
    // max(ln q, 1) = 1 exactly for q <= 2.
    if (beta_ != 0 && q > 2) {
        return std::nullopt;
    }
    // c q^(-p/s) = (c^s q^-p)^(1/s)
    const BigInt& p = a_.get_num();
    const BigInt& s = a_.get_den();
    if (!p.fits_ulong_p() || !s.fits_uint_p()) {
        throw Unsupported("psi exponent too large");
    }
    const unsigned sv = static_cast<unsigned>(s.get_ui());
    BigInt qp;
    mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), p.get_ui());
    const ExactReal base = ExactReal(c_).pow(sv) / ExactReal(qp);
    return RootReal(base, sv).simplified();
}

RationalInterval ApproxFunction::enclose_at(const BigInt& q, unsigned bits) const {
    if (auto e = exact_at(q)) {
        return e->enclose(bits);
    }
    // Each MPFR operation is correctly rounded; eight of them lose < 2^-(prec-4)
    // relatively, so widening by 2^-(prec-8) gives a certified enclosure.
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 32;
    mpfr_t v, t, e;
    mpfr_inits2(prec, v, t, e, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(t, q.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    mpfr_set_q(e, beta_.get_mpq_t(), MPFR_RNDN);
    mpfr_neg(e, e, MPFR_RNDN);
    mpfr_pow(t, t, e, MPFR_RNDN);  // ln(q)^-beta
    mpfr_set_z(v, q.get_mpz_t(), MPFR_RNDN);
    mpfr_set_q(e, a_.get_mpq_t(), MPFR_RNDN);
    mpfr_neg(e, e, MPFR_RNDN);
    mpfr_pow(v, v, e, MPFR_RNDN);  // q^-a
    mpfr_mul(v, v, t, MPFR_RNDN);
    mpfr_mul_q(v, v, c_.get_mpq_t(), MPFR_RNDN);
    const BigRational mid = mpfr_to_rational(v);
    mpfr_clears(v, t, e, static_cast<mpfr_ptr>(nullptr));
    BigRational rel(1);
    mpz_mul_2exp(rel.get_den_mpz_t(), rel.get_den_mpz_t(), static_cast<mp_bitcnt_t>(prec - 8));
    return {mid - mid * rel, mid + mid * rel};
}

Ordering ApproxFunction::compare_at(const ExactReal& x, const BigInt& q) const {
    if (auto e = exact_at(q)) {
        return compare(RootReal(x), *e);
    }
    // ln q is transcendental for q >= 3, so psi(q) is never algebraic and
    // refinement separates it from x.
    RationalInterval xi, pi;
    for (unsigned bits = 64; bits <= 4096; bits *= 2) {
        xi = x.enclose(bits);
        pi = enclose_at(q, bits);
        if (xi.hi < pi.lo) {
            return Ordering::less();
        }
        if (xi.lo > pi.hi) {
            return Ordering::greater();
        }
    }
    return Ordering::uncertain(std::max(xi.width(), pi.width()));
}

double ApproxFunction::approx_at(double q) const {
    if (kind_ == Kind::Table) {
        return exact_at(BigInt(static_cast<unsigned long>(std::max(1.0, std::floor(q)))))->approx();
    }
    const double log_factor = std::max(std::log(q), 1.0);
    return c_.get_d() * std::pow(q, -a_.get_d()) * std::pow(log_factor, -beta_.get_d());
}

std::string ApproxFunction::to_string() const {
    if (kind_ == Kind::PowerLog) {
        return "PowerLog(c=" + dioph::to_string(c_) + ",a=" + dioph::to_string(a_) + ",beta=" + dioph::to_string(beta_) +
               ")";
    }
    std::string out = "Table(";
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        out += (i == 0 ? "" : ",") + steps_[i].first.get_str() + ":" + dioph::to_string(steps_[i].second);
    }
    return out + ")";
}

} // namespace dioph
