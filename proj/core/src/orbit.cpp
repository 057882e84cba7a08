#include "dioph/orbit.hpp"

#include "dioph/error.hpp"

#include <algorithm>

namespace dioph {

namespace {

constexpr unsigned kFixedBits = 64;
const u128 kCap = u128(1) << 65;

BigInt floor_units(const BigRational& r) {
    BigRational s = r;
    mpz_mul_2exp(s.get_num_mpz_t(), s.get_num_mpz_t(), kFixedBits);
    s.canonicalize();
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return f;
}

BigInt ceil_units(const BigRational& r) {
    BigRational s = r;
    mpz_mul_2exp(s.get_num_mpz_t(), s.get_num_mpz_t(), kFixedBits);
    s.canonicalize();
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return c;
}

u128 clamp_u128(const BigInt& v) {
    if (v <= 0) {
        return 0;
    }
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 65) {
        return kCap;
    }
    BigInt hi = v;
    mpz_fdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
    BigInt lo;
    mpz_fdiv_r_2exp(lo.get_mpz_t(), v.get_mpz_t(), 64);
    const u128 h = static_cast<u128>(mpz_get_ui(hi.get_mpz_t()));
    std::uint64_t l = 0;
    mpz_export(&l, nullptr, -1, sizeof(l), 0, 0, lo.get_mpz_t());
    return std::min(kCap, (h << 64) | l);
}

std::uint64_t mod_units(const BigInt& v) {
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), 64);
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

std::uint64_t saturate(u128 v) {
    const u128 cap = u128(1) << 62;
    return static_cast<std::uint64_t>(std::min(v, cap));
}

} // namespace

FixedEnclosure to_fixed(const RationalInterval& iv) { return {clamp_u128(floor_units(iv.lo)), clamp_u128(ceil_units(iv.hi))}; }

ConstantThreshold::ConstantThreshold(RootReal value) : value_(std::move(value)), fixed_(to_fixed(value_.enclose(80))) {}

Ordering ConstantThreshold::compare_at(const ExactReal& dist, std::uint64_t) const { return compare(RootReal(dist), value_); }

FixedEnclosure PsiThreshold::fixed_at(std::uint64_t norm) const {
    return to_fixed(psi_.enclose_at(BigInt(static_cast<unsigned long>(norm)), 80));
}

Ordering PsiThreshold::compare_at(const ExactReal& dist, std::uint64_t norm) const {
    return psi_.compare_at(dist, BigInt(static_cast<unsigned long>(norm)));
}

BigInt annulus_size(std::size_t n, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        return 0;
    }
    BigInt outer, inner;
    const BigInt side = BigInt(static_cast<unsigned long>(hi)) * 2 + 1;
    mpz_pow_ui(outer.get_mpz_t(), side.get_mpz_t(), n);
    if (lo == 0) {
        return outer;
    }
    const BigInt core = BigInt(static_cast<unsigned long>(lo)) * 2 - 1;
    mpz_pow_ui(inner.get_mpz_t(), core.get_mpz_t(), n);
    return outer - inner;
}

void require_budget(std::size_t n, std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
    const BigInt size = annulus_size(n, lo, hi);
    if (size > BigInt(static_cast<unsigned long>(budget))) {
        throw BudgetExceeded("enumeration of " + size.get_str() + " lattice points (norms " + std::to_string(lo) +
                             ".." + std::to_string(hi) + ", n=" + std::to_string(n) + ") exceeds budget " +
                             std::to_string(budget));
    }
}

std::uint64_t norm_bound(const BigInt& v) {
    if (v < 0) {
        return 0;
    }
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 62) {
        throw BudgetExceeded("norm bound " + v.get_str() + " is beyond enumerable range");
    }
    return mpz_get_ui(v.get_mpz_t());
}

FixedPointMatrix::FixedPointMatrix(const ApproxMatrix& A) : m_(A.rows()), n_(A.cols()) {
    value_.reserve(m_ * n_);
    error_.reserve(m_ * n_);
    for (const ExactReal& x : A.entries()) {
        const RationalInterval iv = x.enclose(kFixedBits + 8);
        value_.push_back(mod_units(floor_units(iv.lo)));
        // |x 2^64 - floor(lo 2^64)| < width 2^64 + 1
        error_.push_back(saturate(clamp_u128(ceil_units(iv.width())) + 1));
    }
}

void FixedPointMatrix::apply(std::span<const std::int64_t> q, std::span<std::uint64_t> out) const {
    for (std::size_t i = 0; i < m_; ++i) {
        std::uint64_t acc = 0;
        const std::uint64_t* row = value_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) {
            acc += static_cast<std::uint64_t>(q[j]) * row[j];
        }
        out[i] = acc;
    }
}

u128 FixedPointMatrix::error(std::span<const std::int64_t> q) const {
    u128 worst = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        u128 acc = 0;
        const std::uint64_t* row = error_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::uint64_t a = q[j] < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(q[j]) : static_cast<std::uint64_t>(q[j]);
            acc += u128(a) * row[j];
        }
        worst = std::max(worst, acc);
    }
    return worst;
}

FixedTarget encode_target(std::span<const BigRational> b, std::size_t m) {
    if (!b.empty() && b.size() != m) {
        throw InvalidArgument("target has dimension " + std::to_string(b.size()) + ", expected " + std::to_string(m));
    }
    FixedTarget t;
    t.exact.assign(m, BigRational(0));
    t.units.assign(m, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        t.exact[i] = b[i];
        t.exact[i].canonicalize();
        const BigInt f = floor_units(t.exact[i]);
        t.units[i] = mod_units(f);
        if (ceil_units(t.exact[i]) != f) {
            t.error = 1;
        }
    }
    return t;
}

bool decide_exact(const ApproxMatrix& A, std::span<const std::int64_t> q, std::span<const BigRational> b,
                  const NormThreshold& t, std::uint64_t norm, Relation rel) {
    const std::vector<ExactReal> r = A.residual(q, b);
    const ExactReal d = dist_to_int_vec(r);
    const Ordering o = t.compare_at(d, norm);
    switch (o.kind) {
    case Ordering::Kind::Less:
        return true;
    case Ordering::Kind::Equal:
        return rel == Relation::LessEqual;
    case Ordering::Kind::Greater:
        return false;
    case Ordering::Kind::Uncertain:
        break;
    }
    throw PrecisionExhausted("cannot compare ||Aq-b|| = " + d.to_string() + " with " + t.describe() + " at q=" +
                             IntVec::from_int64(q).to_string() + " (enclosure width " + decimal(o.width, 4) + ")");
}

ThresholdTable::ThresholdTable(const NormThreshold& t, std::uint64_t lo, std::uint64_t hi) : t_(&t), lo_(lo), hi_(hi) {
    if (hi < lo) {
        return;
    }
    if (hi - lo >= (std::uint64_t{1} << 26)) {
        throw BudgetExceeded("threshold table over " + std::to_string(hi - lo + 1) + " norms");
    }
    fixed_.reserve(hi - lo + 1);
    for (std::uint64_t r = lo; r <= hi; ++r) {
        fixed_.push_back(t.fixed_at(r));
    }
}

OrbitTable::OrbitTable(const ApproxMatrix& A, std::uint64_t lo, std::uint64_t hi, const EnumerationOptions& opts)
    : A_(A), m_(A.rows()), n_(A.cols()), lo_(lo), hi_(hi) {
    require_budget(n_, lo, hi, opts.budget);
    const FixedPointMatrix F(A);
    const std::size_t count = lo <= hi ? static_cast<std::size_t>(annulus_size(n_, lo, hi).get_ui()) : 0;
    q_.reserve(count * n_);
    norm_.reserve(count);
    value_.resize(count * m_);
    error_.reserve(count);
    for (std::uint64_t r = lo; r <= hi && lo <= hi; ++r) {
        for_each_in_shell(n_, static_cast<std::int64_t>(r), [&](std::span<const std::int64_t> q) {
            const std::size_t idx = norm_.size();
            q_.insert(q_.end(), q.begin(), q.end());
            norm_.push_back(r);
            F.apply(q, std::span<std::uint64_t>(value_.data() + idx * m_, m_));
            error_.push_back(saturate(F.error(q)));
            return false;
        });
    }
}

std::uint64_t OrbitTable::fixed_dist(std::size_t i, const FixedTarget& b) const {
    std::uint64_t d = 0;
    const std::uint64_t* v = value_.data() + i * m_;
    for (std::size_t r = 0; r < m_; ++r) {
        d = std::max(d, torus_dist(v[r] - b.units[r]));
    }
    return d;
}

ExactReal OrbitTable::exact_dist(std::size_t i, std::span<const BigRational> b) const {
    const std::vector<ExactReal> r = A_.residual(q(i), b);
    return dist_to_int_vec(r);
}

bool OrbitTable::satisfies(std::size_t i, const FixedTarget& b, const ThresholdTable& t, Relation rel) const {
    const int v = decide_fixed(fixed_dist(i, b), fixed_error(i, b), t.at(norm_[i]), rel);
    if (v >= 0) {
        return v == 1;
    }
    return decide_exact(A_, q(i), b.exact, t.threshold(), norm_[i], rel);
}

std::optional<std::size_t> OrbitTable::find_first(const FixedTarget& b, const ThresholdTable& t, Relation rel,
                                                  std::uint64_t max_norm) const {
    for (std::size_t i = 0; i < size() && norm_[i] <= max_norm; ++i) {
        if (satisfies(i, b, t, rel)) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<IntVec> search_first(const ApproxMatrix& A, std::span<const BigRational> b, std::uint64_t lo,
                                   std::uint64_t hi, const NormThreshold& t, Relation rel,
                                   const EnumerationOptions& opts) {
    require_budget(A.cols(), lo, hi, opts.budget);
    const FixedPointMatrix F(A);
    const FixedTarget target = encode_target(b, A.rows());
    std::vector<std::uint64_t> x(A.rows());
    std::optional<IntVec> found;
    for (std::uint64_t r = lo; r <= hi && !found; ++r) {
        const FixedEnclosure thr = t.fixed_at(r);
        for_each_in_shell(A.cols(), static_cast<std::int64_t>(r), [&](std::span<const std::int64_t> q) {
            F.apply(q, x);
            std::uint64_t d = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                d = std::max(d, torus_dist(x[i] - target.units[i]));
            }
            int v = decide_fixed(d, F.error(q) + target.error, thr, rel);
            if (v < 0) {
                v = decide_exact(A, q, target.exact, t, r, rel) ? 1 : 0;
            }
            if (v == 1) {
                found = IntVec::from_int64(q);
                return true;
            }
            return false;
        });
    }
    return found;
}

} // namespace dioph
