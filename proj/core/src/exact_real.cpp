#include "dioph/exact_real.hpp"

#include "dioph/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace dioph {

namespace {

constexpr unsigned kMaxSqrtLevel = 12;

BigRational pow2(long e) {
    BigRational r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

int sgn(const BigRational& r) { return ::sgn(r); }

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
    BigRational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RationalInterval eval_interval(std::span<const BigRational> c, const RationalInterval& theta) {
    RationalInterval acc{c.back(), c.back()};
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = interval_mul(acc, theta);
        acc.lo += c[i];
        acc.hi += c[i];
    }
    return acc;
}

/// k = s^2 * d with d squarefree (trial division up to 10^6, then a perfect-square test).
std::pair<BigInt, BigInt> squarefree_decompose(BigInt k) {
    BigInt s = 1;
    for (unsigned long p = 2; p <= 1000000; ++p) {
        BigInt pp = BigInt(p) * p;
        if (pp > k) {
            break;
        }
        while (mpz_divisible_p(k.get_mpz_t(), pp.get_mpz_t()) != 0) {
            k /= pp;
            s *= p;
        }
    }
    if (k > 1 && mpz_perfect_square_p(k.get_mpz_t()) != 0) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), k.get_mpz_t());
        s *= r;
        k = 1;
    }
    return {s, k};
}

std::vector<std::size_t> cf_schedule(const Generator& g) {
    std::vector<std::size_t> counts;
    const std::size_t top = g.usable_quotients();
    for (std::size_t c = 2; c < top; c *= 2) {
        counts.push_back(c);
    }
    counts.push_back(top);
    return counts;
}

/// Enclosures of x at increasing precision, fed to `fn` until it returns true.
/// Returns the last enclosure and whether fn accepted it.
template <class Fn>
std::pair<RationalInterval, bool> refine(const ExactReal& x, Fn&& fn) {
    if (x.is_rational()) {
        RationalInterval iv{x.as_rational(), x.as_rational()};
        return {iv, fn(iv)};
    }
    const Generator& g = *x.generator();
    RationalInterval iv;
    if (g.kind() == Generator::Kind::Sqrt) {
        for (unsigned level = 0; level <= kMaxSqrtLevel; ++level) {
            iv = eval_interval(x.coefficients(), g.sqrt_enclosure(64U << level));
            if (fn(iv)) {
                return {iv, true};
            }
        }
        return {iv, false};
    }
    for (std::size_t count : cf_schedule(g)) {
        iv = eval_interval(x.coefficients(), g.cf_enclosure(count));
        if (fn(iv)) {
            return {iv, true};
        }
    }
    return {iv, false};
}

} // namespace

Ordering Ordering::reversed() const {
    switch (kind) {
    case Kind::Less:
        return greater();
    case Kind::Greater:
        return less();
    default:
        return *this;
    }
}

std::string_view Ordering::name() const {
    switch (kind) {
    case Kind::Less:
        return "Less";
    case Kind::Equal:
        return "Equal";
    case Kind::Greater:
        return "Greater";
    case Kind::Uncertain:
        return "Uncertain";
    }
    return "Uncertain";
}

// ---------------------------------------------------------------- Generator

std::shared_ptr<const Generator> Generator::make_sqrt(const BigInt& d) {
    if (d < 2) {
        throw InvalidArgument("sqrt generator needs radicand >= 2");
    }
    auto [s, rest] = squarefree_decompose(d);
    if (s != 1) {
        throw InvalidArgument("sqrt generator radicand must be squarefree: " + d.get_str());
    }
    std::shared_ptr<Generator> g(new Generator());
    g->kind_ = Kind::Sqrt;
    g->radicand_ = d;
    return g;
}

std::shared_ptr<const Generator> Generator::make_continued_fraction(std::vector<BigInt> quotients,
                                                                    std::size_t budget) {
    if (quotients.empty()) {
        throw InvalidArgument("continued fraction needs at least a_0");
    }
    if (budget == 0) {
        throw InvalidArgument("precision budget must be positive");
    }
    for (std::size_t k = 1; k < quotients.size(); ++k) {
        if (quotients[k] < 1) {
            throw InvalidArgument("partial quotients a_k, k >= 1, must be positive");
        }
    }
    std::shared_ptr<Generator> g(new Generator());
    g->kind_ = Kind::ContinuedFraction;
    g->budget_ = budget;
    g->p_.reserve(quotients.size());
    g->q_.reserve(quotients.size());
    BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    for (const auto& a : quotients) {
        BigInt p = a * p_prev + p_prev2;
        BigInt q = a * q_prev + q_prev2;
        g->p_.push_back(p);
        g->q_.push_back(q);
        p_prev2 = std::exchange(p_prev, p);
        q_prev2 = std::exchange(q_prev, q);
    }
    g->quotients_ = std::move(quotients);
    return g;
}

std::size_t Generator::usable_quotients() const {
    return std::min(quotients_.size(), budget_);
}

RationalInterval Generator::cf_enclosure(std::size_t count) const {
    count = std::clamp<std::size_t>(count, 1, usable_quotients());
    const std::size_t k = count - 1;
    BigRational a(p_[k], q_[k]);
    const BigInt p1 = k == 0 ? BigInt(1) : p_[k - 1];
    const BigInt q1 = k == 0 ? BigInt(0) : q_[k - 1];
    BigRational b(p_[k] + p1, q_[k] + q1);
    a.canonicalize();
    b.canonicalize();
    if (a <= b) {
        return {a, b};
    }
    return {b, a};
}

RationalInterval Generator::sqrt_enclosure(unsigned bits) const {
    BigInt scaled = radicand_;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2UL * bits);
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    const BigRational unit = pow2(-static_cast<long>(bits));
    return {BigRational(s) * unit, BigRational(s + 1) * unit};
}

bool Generator::same_as(const Generator& other) const {
    if (this == &other) {
        return true;
    }
    if (kind_ != other.kind_) {
        return false;
    }
    if (kind_ == Kind::Sqrt) {
        return radicand_ == other.radicand_;
    }
    return quotients_ == other.quotients_;
}

std::string Generator::literal() const {
    if (kind_ == Kind::Sqrt) {
        return "sqrt(" + radicand_.get_str() + ")";
    }
    std::string out = "cf";
    if (budget_ != kDefaultPrecisionBudget) {
        out += "<" + std::to_string(budget_) + ">";
    }
    out += ":[" + quotients_[0].get_str();
    for (std::size_t k = 1; k < quotients_.size(); ++k) {
        out += (k == 1 ? ";" : ",") + quotients_[k].get_str();
    }
    out += "]";
    return out;
}

// ---------------------------------------------------------------- ExactReal

ExactReal::ExactReal(BigRational v) : coeffs_{std::move(v)} { coeffs_[0].canonicalize(); }

ExactReal ExactReal::rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw InvalidArgument("zero denominator");
    }
    BigRational r(num, den);
    r.canonicalize();
    return ExactReal(r);
}

ExactReal ExactReal::quadratic(const BigRational& a, const BigRational& b, const BigInt& d) {
    return from_generator(Generator::make_sqrt(d), {a, b});
}

ExactReal ExactReal::sqrt(const BigInt& k) {
    if (k < 0) {
        throw InvalidArgument("sqrt of a negative number");
    }
    auto [s, d] = squarefree_decompose(k);
    if (d <= 1) {
        return ExactReal(BigRational(d == 0 ? BigInt(0) : s));
    }
    return from_generator(Generator::make_sqrt(d), {BigRational(0), BigRational(s)});
}

ExactReal ExactReal::continued_fraction(std::vector<BigInt> quotients, std::size_t budget) {
    return from_generator(Generator::make_continued_fraction(std::move(quotients), budget),
                          {BigRational(0), BigRational(1)});
}

ExactReal ExactReal::from_generator(GeneratorPtr gen, std::vector<BigRational> coeffs) {
    ExactReal x;
    if (coeffs.empty()) {
        return x;
    }
    x.gen_ = std::move(gen);
    x.coeffs_ = std::move(coeffs);
    for (auto& c : x.coeffs_) {
        c.canonicalize();
    }
    x.normalize();
    return x;
}

void ExactReal::normalize() {
    if (gen_ && gen_->kind() == Generator::Kind::Sqrt && coeffs_.size() > 2) {
        const BigRational d(gen_->radicand());
        for (std::size_t i = coeffs_.size() - 1; i >= 2; --i) {
            coeffs_[i - 2] += coeffs_[i] * d;
            coeffs_[i] = 0;
        }
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
    if (coeffs_.size() == 1) {
        gen_.reset();
    }
}

ExactReal::Kind ExactReal::kind() const {
    if (is_rational()) {
        return Kind::Rational;
    }
    return gen_->kind() == Generator::Kind::Sqrt ? Kind::Quadratic : Kind::CFReal;
}

const BigRational& ExactReal::as_rational() const {
    if (!is_rational()) {
        throw InvalidArgument("value is not rational: " + to_string());
    }
    return coeffs_[0];
}

void ExactReal::adopt_generator(const ExactReal& other) {
    if (other.is_rational()) {
        return;
    }
    if (!gen_) {
        gen_ = other.gen_;
        return;
    }
    if (!gen_->same_as(*other.gen_)) {
        throw InvalidArgument("cannot mix numbers over distinct generators: " + gen_->literal() + " and " +
                              other.gen_->literal());
    }
}

ExactReal ExactReal::operator-() const {
    ExactReal r = *this;
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
    adopt_generator(rhs);
    if (coeffs_.size() < rhs.coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), BigRational(0));
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    normalize();
    return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs) { return *this += -rhs; }

ExactReal& ExactReal::operator*=(const ExactReal& rhs) {
    adopt_generator(rhs);
    if (rhs.is_rational()) {
        for (auto& c : coeffs_) {
            c *= rhs.coeffs_[0];
        }
        normalize();
        return *this;
    }
    std::vector<BigRational> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& rhs) { return *this *= rhs.inverse(); }

ExactReal ExactReal::inverse() const {
    if (is_rational()) {
        if (coeffs_[0] == 0) {
            throw InvalidArgument("division by zero");
        }
        return ExactReal(BigRational(1) / coeffs_[0]);
    }
    if (gen_->kind() == Generator::Kind::ContinuedFraction) {
        throw Unsupported("inverse of a non-rational continued-fraction expression");
    }
    // (a + b r)^-1 = (a - b r) / (a^2 - b^2 d)
    const BigRational& a = coeffs_[0];
    const BigRational& b = coeffs_[1];
    const BigRational norm = a * a - b * b * BigRational(gen_->radicand());
    return from_generator(gen_, {a / norm, -b / norm});
}

ExactReal ExactReal::pow(unsigned e) const {
    ExactReal result(1L);
    ExactReal base = *this;
    while (e != 0) {
        if ((e & 1U) != 0) {
            result *= base;
        }
        e >>= 1U;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

RationalInterval ExactReal::enclose(unsigned bits) const {
    const BigRational target = pow2(-static_cast<long>(bits));
    if (!is_rational() && gen_->kind() == Generator::Kind::Sqrt) {
        const BigRational& b = coeffs_[1];
        const unsigned extra = static_cast<unsigned>(mpz_sizeinbase(b.get_num_mpz_t(), 2)) + 8;
        return eval_interval(coeffs_, gen_->sqrt_enclosure(bits + extra));
    }
    return refine(*this, [&](const RationalInterval& iv) { return iv.width() <= target; }).first;
}

double ExactReal::approx() const {
    if (is_rational()) {
        return coeffs_[0].get_d();
    }
    return enclose(80).midpoint().get_d();
}

bool ExactReal::identical(const ExactReal& other) const {
    if (is_rational() != other.is_rational()) {
        return false;
    }
    if (!is_rational() && !gen_->same_as(*other.gen_)) {
        return false;
    }
    return coeffs_ == other.coeffs_;
}

std::string ExactReal::to_string() const {
    if (is_rational()) {
        return dioph::to_string(coeffs_[0]);
    }
    if (gen_->kind() == Generator::Kind::Sqrt) {
        const BigRational& a = coeffs_[0];
        const BigRational& b = coeffs_[1];
        BigInt den;
        mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
        const BigRational scaled_a = a * den;
        const BigRational scaled_b = b * den;
        std::string out = "(" + scaled_a.get_num().get_str();
        out += scaled_b >= 0 ? "+" : "-";
        out += BigInt(abs(scaled_b.get_num())).get_str() + "*sqrt(" + gen_->radicand().get_str() + "))";
        if (den != 1) {
            out += "/" + den.get_str();
        }
        return out;
    }
    if (coeffs_.size() == 2 && coeffs_[0] == 0 && coeffs_[1] == 1) {
        return gen_->literal();
    }
    std::string out = "poly(" + gen_->literal() + ";";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out += (i == 0 ? "" : ",") + dioph::to_string(coeffs_[i]);
    }
    return out + ")";
}

std::string ExactReal::to_decimal(int digits) const {
    if (is_rational()) {
        return decimal(coeffs_[0], digits);
    }
    const BigRational rel = BigRational(1, 1) / BigRational(BigInt(10) * 10 * 10);
    BigRational tol(1);
    for (int i = 0; i < digits; ++i) {
        tol /= 10;
    }
    auto [iv, ok] = refine(*this, [&](const RationalInterval& v) {
        BigRational mag = abs(v.lo) < abs(v.hi) ? abs(v.lo) : abs(v.hi);
        return v.width() <= mag * tol * rel;
    });
    (void)ok;
    return decimal(iv.midpoint(), digits);
}

// ---------------------------------------------------------------- comparisons

Ordering sign(const ExactReal& x) {
    if (x.is_rational()) {
        const int s = sgn(x.as_rational());
        return s < 0 ? Ordering::less() : (s > 0 ? Ordering::greater() : Ordering::equal());
    }
    const Generator& g = *x.generator();
    const auto c = x.coefficients();
    if (g.kind() == Generator::Kind::Sqrt) {
        const int s0 = sgn(c[0]);
        const int s1 = sgn(c[1]);
        int s = 0;
        if (s0 == 0 || s0 == s1) {
            s = s1;
        } else if (s1 == 0) {
            s = s0;
        } else {
            // a + b sqrt(d) with opposite signs: compare a^2 with b^2 d (never equal).
            s = c[0] * c[0] > c[1] * c[1] * BigRational(g.radicand()) ? s0 : s1;
        }
        return s < 0 ? Ordering::less() : Ordering::greater();
    }
    auto [iv, ok] = refine(x, [](const RationalInterval& v) { return v.lo > 0 || v.hi < 0; });
    if (!ok) {
        return Ordering::uncertain(iv.width());
    }
    return iv.lo > 0 ? Ordering::greater() : Ordering::less();
}

Ordering compare(const ExactReal& x, const ExactReal& y) {
    if (x.is_rational() && y.is_rational()) {
        const int c = cmp(x.as_rational(), y.as_rational());
        return c < 0 ? Ordering::less() : (c > 0 ? Ordering::greater() : Ordering::equal());
    }
    return sign(x - y);
}

namespace {
[[noreturn]] void exhausted(const ExactReal& x, const ExactReal& y) {
    throw PrecisionExhausted("cannot decide comparison of " + x.to_string() + " and " + y.to_string());
}
} // namespace

bool certainly_less(const ExactReal& x, const ExactReal& y) {
    const Ordering o = compare(x, y);
    if (!o.decided()) {
        exhausted(x, y);
    }
    return o.is_less();
}

bool certainly_less_equal(const ExactReal& x, const ExactReal& y) {
    const Ordering o = compare(x, y);
    if (!o.decided()) {
        exhausted(x, y);
    }
    return !o.is_greater();
}

bool certainly_equal(const ExactReal& x, const ExactReal& y) {
    const Ordering o = compare(x, y);
    if (!o.decided()) {
        exhausted(x, y);
    }
    return o.is_equal();
}

int certain_sign(const ExactReal& x) {
    const Ordering o = sign(x);
    if (!o.decided()) {
        exhausted(x, ExactReal(0L));
    }
    return o.is_less() ? -1 : (o.is_greater() ? 1 : 0);
}

BigInt floor(const ExactReal& x) {
    if (x.is_rational()) {
        BigInt r;
        mpz_fdiv_q(r.get_mpz_t(), x.as_rational().get_num_mpz_t(), x.as_rational().get_den_mpz_t());
        return r;
    }
    auto fl = [](const BigRational& r) {
        BigInt z;
        mpz_fdiv_q(z.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return z;
    };
    auto [iv, ok] = refine(x, [&](const RationalInterval& v) { return fl(v.lo) == fl(v.hi); });
    if (!ok) {
        throw PrecisionExhausted("cannot determine floor of " + x.to_string());
    }
    return fl(iv.lo);
}

ExactReal abs(const ExactReal& x) { return certain_sign(x) < 0 ? -x : x; }

ExactReal max(const ExactReal& x, const ExactReal& y) { return certainly_less(x, y) ? y : x; }

ExactReal min(const ExactReal& x, const ExactReal& y) { return certainly_less(y, x) ? y : x; }

ExactReal dist_to_int(const ExactReal& x) {
    if (x.is_rational()) {
        const BigRational& r = x.as_rational();
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        BigRational frac = r - f;
        if (frac > BigRational(1, 2)) {
            frac = 1 - frac;
        }
        return ExactReal(frac);
    }
    ExactReal frac = x - ExactReal(floor(x));
    if (certainly_less(ExactReal(BigRational(1, 2)), frac)) {
        return ExactReal(1L) - frac;
    }
    return frac;
}

ExactReal sup_norm(std::span<const ExactReal> v) {
    if (v.empty()) {
        throw InvalidArgument("sup_norm of an empty vector");
    }
    ExactReal best = abs(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        best = max(best, abs(v[i]));
    }
    return best;
}

ExactReal dist_to_int_vec(std::span<const ExactReal> v) {
    if (v.empty()) {
        throw InvalidArgument("dist_to_int_vec of an empty vector");
    }
    ExactReal best = dist_to_int(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        best = max(best, dist_to_int(v[i]));
    }
    return best;
}

std::string to_string(const BigRational& r) {
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string decimal(const BigRational& r, int digits) {
    if (r == 0) {
        return "0";
    }
    mpf_class f(r, static_cast<mp_bitcnt_t>(digits * 4 + 64));
    char buf[256];
    gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
    return buf;
}

// ---------------------------------------------------------------- parsing

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view text) {
        // Accept the Unicode minus sign.
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text.substr(i, 3) == "\xE2\x88\x92") {
                src_ += '-';
                i += 2;
            } else if (std::isspace(static_cast<unsigned char>(text[i])) == 0) {
                src_ += text[i];
            }
        }
    }

    ExactReal parse() {
        if (src_.empty()) {
            fail("empty literal");
        }
        ExactReal v = expr();
        if (pos_ != src_.size()) {
            fail("unexpected trailing input");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
    }

    bool eat(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    bool starts_with(std::string_view s) const { return std::string_view(src_).substr(pos_, s.size()) == s; }

    BigInt integer() {
        const std::size_t start = pos_;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            ++pos_;
        }
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
        std::string digits = src_.substr(start, pos_ - start);
        if (!digits.empty() && digits[0] == '+') {
            digits.erase(0, 1);
        }
        if (digits.empty() || digits == "-") {
            fail("expected integer");
        }
        return BigInt(digits);
    }

    BigRational rational() {
        BigInt num = integer();
        BigInt den = 1;
        if (eat('/')) {
            den = integer();
            if (den <= 0) {
                fail("denominator must be positive");
            }
        }
        BigRational r(num, den);
        r.canonicalize();
        return r;
    }

    GeneratorPtr cf_generator() {
        pos_ += 2;  // "cf"
        std::size_t budget = kDefaultPrecisionBudget;
        if (eat('<')) {
            BigInt b = integer();
            if (b <= 0 || !b.fits_ulong_p()) {
                fail("invalid precision budget");
            }
            budget = b.get_ui();
            expect('>');
        }
        expect(':');
        expect('[');
        std::vector<BigInt> q{integer()};
        if (eat(';')) {
            q.push_back(integer());
            while (eat(',')) {
                q.push_back(integer());
            }
        }
        expect(']');
        try {
            return Generator::make_continued_fraction(std::move(q), budget);
        } catch (const InvalidArgument& e) {
            fail(e.what());
        }
    }

    ExactReal expr() {
        ExactReal v = term();
        for (;;) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    ExactReal term() {
        ExactReal v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                ExactReal d = unary();
                if (d.is_rational() && d.as_rational() == 0) {
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    ExactReal unary() {
        if (eat('-')) {
            return -unary();
        }
        if (eat('+')) {
            return unary();
        }
        return primary();
    }

    ExactReal primary() {
        if (eat('(')) {
            ExactReal v = expr();
            expect(')');
            return v;
        }
        if (starts_with("sqrt(")) {
            pos_ += 5;
            ExactReal arg = expr();
            expect(')');
            if (!arg.is_rational() || arg.as_rational() < 0) {
                fail("sqrt argument must be a nonnegative rational");
            }
            const BigRational& r = arg.as_rational();
            return ExactReal::sqrt(r.get_num() * r.get_den()) / ExactReal(BigInt(r.get_den()));
        }
        if (starts_with("cf")) {
            return ExactReal::from_generator(cf_generator(), {BigRational(0), BigRational(1)});
        }
        if (starts_with("poly(")) {
            pos_ += 5;
            if (!starts_with("cf")) {
                fail("poly(...) expects a cf: generator");
            }
            GeneratorPtr g = cf_generator();
            expect(';');
            std::vector<BigRational> coeffs{rational()};
            while (eat(',')) {
                coeffs.push_back(rational());
            }
            expect(')');
            return ExactReal::from_generator(std::move(g), std::move(coeffs));
        }
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
            return ExactReal(integer());
        }
        fail("expected number, '(', sqrt(...) or cf:[...]");
    }

    std::string src_;
    std::size_t pos_ = 0;
};

} // namespace

ExactReal parse_exact_real(std::string_view text) {
    try {
        return LiteralParser(text).parse();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid literal '") + std::string(text) + "': " + e.what());
    }
}

} // namespace dioph
