#include "dioph/lattice.hpp"

#include "dioph/error.hpp"

#include <cmath>
#include <map>

namespace dioph {

namespace {

constexpr double kUnit = 18446744073709551616.0;  // 2^64

BigRational pow2(long e) {
    BigRational r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

std::size_t rank_over_q(std::vector<std::vector<BigRational>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) {
                continue;
            }
            const BigRational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[r][k] -= f * rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

bool is_bare_cf(const ExactReal& x) {
    const auto c = x.coefficients();
    return x.kind() == ExactReal::Kind::CFReal && c.size() == 2 && c[0] == 0 && c[1] == 1;
}

} // namespace

std::optional<IntVec> solve_homogeneous(const ApproxMatrix& A, const RootReal& C, const BigInt& X,
                                        const EnumerationOptions& opts) {
    if (certain_sign(C.numerator()) <= 0) {
        throw InvalidArgument("solve_homogeneous requires C > 0");
    }
    if (X < 1) {
        throw InvalidArgument("solve_homogeneous requires X >= 1");
    }
    if (X == 1) {
        return std::nullopt;
    }
    const ConstantThreshold t(C);
    return search_first(A, {}, 1, norm_bound(X - 1), t, Relation::Less, opts);
}

RootReal return_threshold(const ExactReal& epsilon, long ell, std::size_t m, std::size_t n) {
    const ExactReal base = epsilon.pow(static_cast<unsigned>(m)) * ExactReal(pow2(-static_cast<long>(n) * ell));
    return RootReal(base, static_cast<unsigned>(m)).simplified();
}

ReturnSequence return_sequence(const ApproxMatrix& A, const ExactReal& epsilon, long ell_max,
                               const EnumerationOptions& opts) {
    if (certain_sign(epsilon) <= 0) {
        throw InvalidArgument("epsilon must be positive");
    }
    if (ell_max < 1) {
        throw InvalidArgument("ell_max must be >= 1");
    }
    ReturnSequence out{epsilon, ell_max, {}};
    for (long ell = 1; ell <= ell_max; ++ell) {
        const RootReal C = return_threshold(epsilon, ell, A.rows(), A.cols());
        BigInt X = 1;
        mpz_mul_2exp(X.get_mpz_t(), X.get_mpz_t(), static_cast<mp_bitcnt_t>(ell));
        if (!solve_homogeneous(A, C, X, opts)) {
            out.levels.push_back(ell);
        }
    }
    return out;
}

BadWitness bad_witness(const ApproxMatrix& A, const BigInt& Q, const EnumerationOptions& opts) {
    if (Q < 1) {
        throw InvalidArgument("bad_witness requires Q >= 1");
    }
    const std::uint64_t hi = norm_bound(Q);
    require_budget(A.cols(), 1, hi, opts.budget);
    const FixedPointMatrix F(A);
    const double expo = static_cast<double>(A.cols()) / static_cast<double>(A.rows());
    const unsigned m = static_cast<unsigned>(A.rows());
    std::vector<std::uint64_t> x(A.rows());

    std::optional<BadWitness> best;
    double best_upper = 0.0;
    for_each_in_annulus(A.cols(), 1, hi, [&](std::span<const std::int64_t> q) {
        std::uint64_t norm = 0;
        for (std::int64_t v : q) {
            norm = std::max<std::uint64_t>(norm, static_cast<std::uint64_t>(v < 0 ? -v : v));
        }
        F.apply(q, x);
        std::uint64_t d = 0;
        for (std::uint64_t v : x) {
            d = std::max(d, torus_dist(v));
        }
        const u128 e = F.error(q);
        const double scale = std::pow(static_cast<double>(norm), expo) / kUnit;
        const double lower = (u128(d) > e ? static_cast<double>(u128(d) - e) : 0.0) * scale * (1.0 - 1e-9);
        if (best && lower > best_upper) {
            return false;
        }
        const ExactReal dist = dist_to_int_vec(A.apply(q));
        BigInt rn;
        mpz_ui_pow_ui(rn.get_mpz_t(), norm, A.cols());
        RootReal value(ExactReal(rn) * dist.pow(m), m);
        if (!best || compare(value, best->min_value).is_less()) {
            best = BadWitness{std::move(value), IntVec::from_int64(q)};
            best_upper = static_cast<double>(u128(d) + e) * scale * (1.0 + 1e-9);
        }
        return false;
    });
    best->min_value = best->min_value.simplified();
    return std::move(*best);
}

bool check_rank(const ApproxMatrix& A) {
    if (A.has_continued_fraction()) {
        throw Unsupported("check_rank is undecidable for continued-fraction entries");
    }
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    std::vector<std::vector<BigRational>> rows;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<BigRational> row(2 * n, BigRational(0));
        for (std::size_t j = 0; j < n; ++j) {
            const auto c = A(i, j).coefficients();
            row[j] = c[0];
            if (c.size() > 1) {
                row[n + j] = c[1];
            }
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<BigRational> row(2 * n, BigRational(0));
        row[j] = 1;
        rows.push_back(std::move(row));
    }
    return rank_over_q(std::move(rows)) == m + n;
}

BestApproxSequence best_approximations(const ApproxMatrix& A, const BigInt& Y_max, const EnumerationOptions& opts) {
    if (Y_max < 1) {
        throw InvalidArgument("best_approximations requires Y_max >= 1");
    }
    if (!A.has_continued_fraction() && !check_rank(A)) {
        throw RankDeficient("rows of A together with Z^n do not have rank m+n");
    }
    const ApproxMatrix At = A.transpose();
    const std::size_t m = A.rows();
    const std::uint64_t hi = norm_bound(Y_max);
    require_budget(m, 1, hi, opts.budget);
    const FixedPointMatrix F(At);
    std::vector<std::uint64_t> x(At.rows());

    BestApproxSequence out;
    out.horizon = Y_max;
    ExactReal record(BigRational(1, 2));
    u128 record_upper = u128(1) << 63;

    struct Candidate {
        std::vector<std::int64_t> y;
        ExactReal dist;
        u128 upper;
    };
    for (std::uint64_t r = 1; r <= hi; ++r) {
        std::optional<Candidate> shell_best;
        for_each_in_shell(m, static_cast<std::int64_t>(r), [&](std::span<const std::int64_t> y) {
            F.apply(y, x);
            std::uint64_t d = 0;
            for (std::uint64_t v : x) {
                d = std::max(d, torus_dist(v));
            }
            const u128 e = F.error(y);
            const u128 lower = u128(d) > e ? u128(d) - e : 0;
            if (lower > record_upper || (shell_best && lower > shell_best->upper)) {
                return false;
            }
            ExactReal dist = dist_to_int_vec(At.apply(y));
            const ExactReal& bar = shell_best ? shell_best->dist : record;
            if (compare(dist, bar).is_less()) {
                shell_best = Candidate{{y.begin(), y.end()}, std::move(dist), u128(d) + e};
            }
            return false;
        });
        if (shell_best) {
            if (certain_sign(shell_best->dist) == 0) {
                throw RankDeficient("||tA y||_Z = 0 at y = " + IntVec::from_int64(shell_best->y).to_string());
            }
            record = shell_best->dist;
            record_upper = shell_best->upper;
            out.entries.push_back(BestApprox{IntVec::from_int64(shell_best->y), BigInt(static_cast<unsigned long>(r)),
                                             shell_best->dist});
        }
    }
    return out;
}

BestApproxSequence best_approximations_from_cf(const ExactReal& alpha, std::size_t count) {
    if (alpha.is_rational()) {
        throw RankDeficient("rational alpha has no infinite best-approximation sequence");
    }
    const ContinuedFraction cf = continued_fraction(alpha, count + 2);
    const std::vector<BigInt> q = convergent_denominators(cf.quotients);
    BestApproxSequence out;
    for (std::size_t k = 0; k < q.size() && out.entries.size() < count; ++k) {
        if (!out.entries.empty() && q[k] == out.entries.back().Y) {
            continue;
        }
        ExactReal M = dist_to_int(ExactReal(q[k]) * alpha);
        if (!out.entries.empty() && !certainly_less(M, out.entries.back().M)) {
            throw Error("convergent record is not strictly decreasing at q = " + q[k].get_str());
        }
        out.entries.push_back(BestApprox{IntVec(std::vector<BigInt>{BigInt(-q[k])}), q[k], std::move(M)});
    }
    if (out.entries.size() < count) {
        throw InsufficientData("only " + std::to_string(out.entries.size()) + " best approximations available from " +
                               std::to_string(cf.quotients.size()) + " partial quotients");
    }
    out.horizon = out.entries.back().Y;
    return out;
}

std::vector<BigInt> convergent_denominators(std::span<const BigInt> quotients) {
    std::vector<BigInt> q;
    BigInt prev2 = 1;
    BigInt prev1 = 0;
    for (const BigInt& a : quotients) {
        BigInt cur = a * prev1 + prev2;
        q.push_back(cur);
        prev2 = prev1;
        prev1 = cur;
    }
    return q;
}

ContinuedFraction continued_fraction(const ExactReal& x, std::size_t k) {
    if (k < 1) {
        throw InvalidArgument("continued_fraction requires k >= 1");
    }
    ContinuedFraction out;
    if (x.kind() == ExactReal::Kind::CFReal) {
        if (!is_bare_cf(x)) {
            throw Unsupported("continued_fraction of a polynomial in a continued-fraction number");
        }
        const auto a = x.generator()->partial_quotients();
        out.quotients.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(k, a.size())));
        return out;
    }
    ExactReal xi = x;
    std::map<std::string, std::size_t> seen;
    while (out.quotients.size() < k) {
        if (!out.period_start && !xi.is_rational()) {
            auto [it, inserted] = seen.emplace(xi.to_string(), out.quotients.size());
            if (!inserted) {
                out.period_start = it->second;
                out.period.assign(out.quotients.begin() + static_cast<std::ptrdiff_t>(it->second), out.quotients.end());
            }
        }
        if (out.period_start) {
            const std::size_t i = out.quotients.size() - *out.period_start;
            out.quotients.push_back(out.period[i % out.period.size()]);
            continue;
        }
        const BigInt a = floor(xi);
        out.quotients.push_back(a);
        const ExactReal frac = xi - ExactReal(a);
        if (certain_sign(frac) == 0) {
            out.terminated = true;
            break;
        }
        xi = frac.inverse();
    }
    return out;
}

} // namespace dioph
