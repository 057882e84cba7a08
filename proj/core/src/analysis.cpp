#include "dioph/analysis.hpp"

#include "dioph/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dioph {

namespace {

SeriesStatus closed_form(const ApproxFunction& psi, const BigRational& s, std::size_t n, std::string& rationale) {
    const BigRational as = psi.a() * s;
    const BigRational bs = psi.beta() * s;
    const BigRational nn(BigInt(static_cast<unsigned long>(n)));
    if (as > nn) {
        rationale = "a*s = " + to_string(as) + " > n = " + nn.get_str();
        return SeriesStatus::Converges;
    }
    if (as < nn) {
        rationale = "a*s = " + to_string(as) + " < n = " + nn.get_str();
        return SeriesStatus::Diverges;
    }
    if (bs > 1) {
        rationale = "a*s = n and beta*s = " + to_string(bs) + " > 1";
        return SeriesStatus::Converges;
    }
    rationale = "a*s = n and beta*s = " + to_string(bs) + " <= 1";
    return SeriesStatus::Diverges;
}

long double series_term(const ApproxFunction& psi, long double s, std::size_t n, std::uint64_t q) {
    const long double qq = static_cast<long double>(q);
    if (psi.kind() == ApproxFunction::Kind::PowerLog) {
        const long double lf = std::max(std::log(qq), 1.0L);
        const long double log_term = static_cast<long double>(n - 1) * std::log(qq) +
                                     s * (std::log(static_cast<long double>(psi.c().get_d())) -
                                          static_cast<long double>(psi.a().get_d()) * std::log(qq) -
                                          static_cast<long double>(psi.beta().get_d()) * std::log(lf));
        return std::exp(log_term);
    }
    return std::pow(qq, static_cast<long double>(n - 1)) *
           std::pow(static_cast<long double>(psi.approx_at(static_cast<double>(q))), s);
}

SeriesStatus tail_trend(const std::vector<long double>& blocks, double& exponent) {
    const std::size_t J = blocks.size();
    if (J < 6) {
        return SeriesStatus::Unknown;
    }
    const long double ratio = blocks[J - 1] / blocks[J - 2];
    if (ratio < 0.9L) {
        exponent = std::numeric_limits<double>::infinity();
        return SeriesStatus::Converges;
    }
    if (ratio > 1.1L) {
        exponent = -std::numeric_limits<double>::infinity();
        return SeriesStatus::Diverges;
    }
    // Sub-geometric tail: fit blocks ~ j^-p by least squares on the upper half.
    long double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t j = std::max<std::size_t>(3, J / 2); j < J; ++j) {
        const long double x = std::log(static_cast<long double>(j));
        const long double y = std::log(blocks[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1;
    }
    const long double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    exponent = static_cast<double>(-slope);
    if (exponent > 1.25) {
        return SeriesStatus::Converges;
    }
    if (exponent < 0.75) {
        return SeriesStatus::Diverges;
    }
    return SeriesStatus::Unknown;
}

BigInt pow_ui(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::vector<std::int64_t> to_int64(const IntVec& v) {
    std::vector<std::int64_t> out;
    for (const BigInt& c : v.coords()) {
        if (!c.fits_slong_p()) {
            throw InvalidArgument("integer vector coordinate out of range: " + c.get_str());
        }
        out.push_back(c.get_si());
    }
    return out;
}

/// Minimum of ||M q - b||_Z over lo <= ||q|| < X for every X in the schedule.
std::vector<std::optional<ExactReal>> running_minima(const ApproxMatrix& M, const std::vector<BigRational>& b,
                                                     std::uint64_t lo, std::span<const BigInt> schedule,
                                                     const EnumerationOptions& opts) {
    const std::uint64_t xmax = norm_bound(schedule.back());
    require_budget(M.cols(), lo, xmax - 1, opts.budget);
    const FixedPointMatrix F(M);
    const FixedTarget target = encode_target(b, M.rows());
    std::vector<std::uint64_t> x(M.rows());
    std::optional<ExactReal> best;
    u128 best_upper = 0;
    std::vector<std::optional<ExactReal>> out;
    std::size_t next = 0;
    for (std::uint64_t r = lo; r < xmax; ++r) {
        while (next < schedule.size() && schedule[next] <= BigInt(static_cast<unsigned long>(r))) {
            out.push_back(best);
            ++next;
        }
        for_each_in_shell(M.cols(), static_cast<std::int64_t>(r), [&](std::span<const std::int64_t> q) {
            F.apply(q, x);
            std::uint64_t d = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                d = std::max(d, torus_dist(x[i] - target.units[i]));
            }
            const u128 e = F.error(q) + target.error;
            const u128 lower = u128(d) > e ? u128(d) - e : 0;
            if (best && lower > best_upper) {
                return false;
            }
            ExactReal dist = dist_to_int_vec(M.residual(q, target.exact));
            if (!best || compare(dist, *best).is_less()) {
                best = std::move(dist);
                best_upper = u128(d) + e;
            }
            return false;
        });
    }
    while (next < schedule.size()) {
        out.push_back(best);
        ++next;
    }
    return out;
}

ExponentPoint exponent_point(const BigInt& X, const std::optional<ExactReal>& best) {
    ExponentPoint p{X, best, 0.0, false};
    if (!best) {
        p.exponent = std::numeric_limits<double>::quiet_NaN();
        return p;
    }
    if (certain_sign(*best) == 0) {
        p.exact_hit = true;
        p.exponent = std::numeric_limits<double>::infinity();
        return p;
    }
    const RationalInterval iv = best->enclose(80);
    long exp2 = 0;
    const double mant = mpf_get_d_2exp(&exp2, mpf_class(iv.midpoint()).get_mpf_t());
    const double log_best = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    p.exponent = -log_best / std::log(X.get_d());
    return p;
}

} // namespace

std::string_view to_string(SeriesStatus s) {
    switch (s) {
    case SeriesStatus::Converges:
        return "Converges";
    case SeriesStatus::Diverges:
        return "Diverges";
    case SeriesStatus::Unknown:
        break;
    }
    return "Unknown";
}

SeriesVerdict classify_series(const ApproxFunction& psi, const BigRational& s, std::size_t n, std::uint64_t horizon) {
    if (s <= 0) {
        throw InvalidArgument("series exponent s must be positive");
    }
    if (n < 1 || horizon < 1) {
        throw InvalidArgument("classify_series requires n >= 1 and a positive horizon");
    }
    SeriesVerdict v;
    if (psi.kind() == ApproxFunction::Kind::PowerLog) {
        v.status = closed_form(psi, s, n, v.rationale);
    } else {
        v.status = SeriesStatus::Unknown;
        v.rationale = "table psi: partial sums only";
    }
    const long double sd = static_cast<long double>(s.get_d());
    long double sum = 0.0L;
    long double block = 0.0L;
    std::vector<long double> blocks;
    std::uint64_t next_report = 1;
    std::uint64_t block_end = 1;  // block j covers [2^j, 2^(j+1))
    for (std::uint64_t q = 1; q <= horizon; ++q) {
        const long double t = series_term(psi, sd, n, q);
        sum += t;
        block += t;
        if (q == 2 * block_end - 1) {
            blocks.push_back(block);
            block = 0.0L;
            block_end *= 2;
        }
        if (q == next_report || q == horizon) {
            v.partial_sums.push_back({BigInt(static_cast<unsigned long>(q)), static_cast<double>(sum)});
            while (next_report <= q) {
                next_report *= 10;
            }
        }
    }
    v.trend = tail_trend(blocks, v.tail_exponent);
    return v;
}

SeriesVerdict classify_return_series(const ApproxFunction& psi, const BigRational& s, std::size_t n,
                                     std::span<const long> levels, long ell_max) {
    if (levels.empty()) {
        throw InvalidArgument("classify_return_series needs a nonempty level list");
    }
    SeriesVerdict v;
    const long double sd = static_cast<long double>(s.get_d());
    const long double ln2 = std::log(2.0L);
    long double sum = 0.0L;
    for (long ell : levels) {
        long double log_psi;
        if (psi.kind() == ApproxFunction::Kind::PowerLog) {
            const long double lq = static_cast<long double>(ell) * ln2;
            log_psi = std::log(static_cast<long double>(psi.c().get_d())) -
                      static_cast<long double>(psi.a().get_d()) * lq -
                      static_cast<long double>(psi.beta().get_d()) * std::log(std::max(lq, 1.0L));
        } else {
            log_psi = std::log(static_cast<long double>(psi.approx_at(std::ldexp(1.0, static_cast<int>(ell)))));
        }
        sum += std::exp(static_cast<long double>(ell) * static_cast<long double>(n) * ln2 + sd * log_psi);
        v.partial_sums.push_back({BigInt(ell), static_cast<double>(sum)});
    }
    bool full = static_cast<long>(levels.size()) == ell_max;
    for (std::size_t i = 0; full && i < levels.size(); ++i) {
        full = levels[i] == static_cast<long>(i) + 1;
    }
    if (full && psi.kind() == ApproxFunction::Kind::PowerLog) {
        v.status = closed_form(psi, s, n, v.rationale);
        v.rationale = "full levels 1.." + std::to_string(ell_max) + ", condensation: " + v.rationale;
    } else {
        v.status = SeriesStatus::Unknown;
        v.rationale = full ? "table psi: partial sums only" : "sparse levels: partial sums only";
    }
    return v;
}

CounterpartReport gamma_sequence(const BestApproxSequence& best, std::size_t m, std::size_t n) {
    const std::size_t K = best.entries.size();
    if (K < 3) {
        throw InsufficientData("gamma_sequence needs at least three best approximations, got " + std::to_string(K));
    }
    const unsigned mu = static_cast<unsigned>(m);
    const unsigned nu = static_cast<unsigned>(n);
    CounterpartReport r;
    r.m = m;
    r.n = n;
    BigRational lo_sum(0), hi_sum(0);
    double running = 0.0;
    for (std::size_t k = 2; k + 1 <= K; ++k) {
        if (k == K) {
            break;
        }
        const BestApprox& prev = best.entries[k - 2];
        const BestApprox& cur = best.entries[k - 1];
        const BestApprox& next = best.entries[k];
        const ExactReal left = ExactReal(pow_ui(cur.Y, mu)) * prev.M.pow(nu);
        const ExactReal right = ExactReal(pow_ui(next.Y, mu)) * cur.M.pow(nu);
        const ExactReal G = certainly_less(left, right) ? right : left;
        r.k.push_back(k);
        r.gamma_power.push_back(G);
        r.gamma.emplace_back(G, mu + nu);
        r.U.emplace_back(ExactReal(pow_ui(cur.Y, mu * (mu + nu))), G.pow(mu), nu * (mu + nu));
        r.V.emplace_back(G, cur.M.pow(mu + nu), mu + nu);
        r.U_lt_V.push_back(certainly_less(r.U.back(), r.V.back()));
        const RationalInterval g = r.gamma.back().enclose(64);
        lo_sum += g.lo;
        hi_sum += g.hi;
        running += r.gamma.back().approx();
        r.gamma_partial_sums.push_back(running);
    }
    r.V_increasing = true;
    for (std::size_t i = 0; i + 1 < r.k.size(); ++i) {
        r.U_next_le_V.push_back(certainly_less_equal(r.U[i + 1], r.V[i]));
        r.V_increasing = r.V_increasing && certainly_less(r.V[i], r.V[i + 1]);
    }
    r.gamma_sum = {lo_sum, hi_sum};
    return r;
}

bool b_alpha_test(std::span<const BigRational> b, const BestApproxSequence& best, const CounterpartReport& gammas,
                  const BigRational& alpha, std::size_t k_first, std::size_t k_last) {
    if (gammas.k.empty() || k_first < gammas.k.front() || k_last > gammas.k.back() || k_first > k_last) {
        throw InvalidArgument("k range [" + std::to_string(k_first) + ", " + std::to_string(k_last) +
                              "] outside the computed gamma horizon");
    }
    if (alpha <= 0) {
        throw InvalidArgument("alpha must be positive");
    }
    const unsigned e = static_cast<unsigned>(gammas.m + gammas.n);
    for (std::size_t k = k_first; k <= k_last; ++k) {
        const IntVec& y = best.entries[k - 1].y;
        if (y.dim() != b.size()) {
            throw InvalidArgument("b must have dimension m");
        }
        BigRational dot(0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            dot += b[i] * BigRational(y[i]);
        }
        const ExactReal d = dist_to_int(ExactReal(dot));
        const RootReal bound(ExactReal(alpha).pow(e) * gammas.gamma_power[k - gammas.k.front()], e);
        if (!certainly_less(bound, RootReal(d))) {
            return false;
        }
    }
    return true;
}

Prop51Report verify_prop_5_1(const ApproxMatrix& A, std::span<const BigRational> b, const BigRational& alpha,
                             const BestApproxSequence& best, const CounterpartReport& gammas, const Window& w,
                             const EnumerationOptions& opts) {
    const BigRational nn(BigInt(static_cast<unsigned long>(A.cols())));
    if (alpha <= nn) {
        throw InvalidArgument("verify_prop_5_1 requires alpha > n");
    }
    w.validate();
    Prop51Report rep;
    for (std::size_t i = 0; i < gammas.k.size(); ++i) {
        rep.ranges.emplace_back(gammas.U[i].ceil(), gammas.V[i].ceil() - 1);
    }
    // binding k for a norm r: the first k with r in its range
    auto binding = [&](const BigInt& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < rep.ranges.size(); ++i) {
            if (rep.ranges[i].first <= r && r <= rep.ranges[i].second) {
                return i;
            }
        }
        return std::nullopt;
    };
    std::optional<std::size_t> first, last;
    BigInt r = w.l + 1;
    while (r <= w.u) {
        const auto i = binding(r);
        if (!i) {
            throw CoverageGap("norm " + r.get_str() + " in window " + w.to_string() + " is not covered by any [U_k, V_k)");
        }
        first = first ? std::min(*first, *i) : *i;
        last = last ? std::max(*last, *i) : *i;
        r = std::min(rep.ranges[*i].second, w.u) + 1;
    }
    // ranges may overlap; every k whose range meets the window is part of the claim
    for (std::size_t i = 0; i < rep.ranges.size(); ++i) {
        if (rep.ranges[i].first <= w.u && rep.ranges[i].second > w.l && rep.ranges[i].first <= rep.ranges[i].second) {
            first = std::min(*first, i);
            last = std::max(*last, i);
        }
    }
    rep.k_first = gammas.k[*first];
    rep.k_last = gammas.k[*last];
    rep.precondition = b_alpha_test(b, best, gammas, alpha, rep.k_first, rep.k_last);
    if (!rep.precondition) {
        return rep;
    }
    const std::uint64_t lo = norm_bound(w.l + 1);
    const std::uint64_t hi = norm_bound(w.u);
    const OrbitTable orbit(A, lo, hi, opts);
    const PsiThreshold t(ApproxFunction::power_log((alpha - nn) / BigRational(BigInt(static_cast<unsigned long>(A.rows()))),
                                                   nn / BigRational(BigInt(static_cast<unsigned long>(A.rows())))));
    const ThresholdTable table(t, lo, hi);
    const FixedTarget target = encode_target(b, A.rows());
    rep.binding_histogram.assign(rep.k_last - rep.k_first + 1, 0);
    rep.tested = orbit.size();
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        const std::size_t k = *binding(BigInt(static_cast<unsigned long>(orbit.norm(i))));
        ++rep.binding_histogram[gammas.k[k] - rep.k_first];
        if (orbit.satisfies(i, target, table, Relation::LessEqual)) {
            ++rep.violations;
            if (rep.violating.size() < 100) {
                rep.violating.emplace_back(orbit.vec(i), gammas.k[k]);
            }
        }
    }
    return rep;
}

bool key_inequality_check(const ApproxMatrix& A, std::span<const BigRational> b, const IntVec& q, const IntVec& y) {
    if (q.dim() != A.cols() || y.dim() != A.rows() || b.size() != A.rows()) {
        throw InvalidArgument("key_inequality_check: inconsistent dimensions");
    }
    BigRational dot(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        dot += b[i] * BigRational(y[i]);
    }
    const ExactReal lhs = dist_to_int(ExactReal(dot));
    const std::vector<std::int64_t> qi = to_int64(q);
    const std::vector<std::int64_t> yi = to_int64(y);
    const ExactReal res = dist_to_int_vec(A.residual(qi, b));
    const ExactReal dual = dist_to_int_vec(A.transpose().apply(yi));
    const ExactReal rhs = ExactReal(BigInt(static_cast<unsigned long>(A.rows()))) * ExactReal(y.norm()) * res +
                          ExactReal(BigInt(static_cast<unsigned long>(A.cols()))) * ExactReal(q.norm()) * dual;
    return certainly_less_equal(lhs, rhs);
}

ExponentEstimate estimate_exponents(const ApproxMatrix& A, std::optional<std::vector<BigRational>> b,
                                    std::span<const BigInt> X_schedule, const EnumerationOptions& opts) {
    if (X_schedule.empty()) {
        throw InvalidArgument("X schedule is empty");
    }
    for (std::size_t i = 0; i < X_schedule.size(); ++i) {
        if (X_schedule[i] < 2 || (i > 0 && X_schedule[i] <= X_schedule[i - 1])) {
            throw InvalidArgument("X schedule must be increasing and >= 2");
        }
    }
    ExponentEstimate est;
    if (b) {
        const auto mins = running_minima(A, *b, 0, X_schedule, opts);
        est.w_hat = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < X_schedule.size(); ++i) {
            est.inhomogeneous.push_back(exponent_point(X_schedule[i], mins[i]));
            est.w_hat = std::max(est.w_hat, est.inhomogeneous.back().exponent);
        }
    }
    const ApproxMatrix At = A.transpose();
    const auto hom = running_minima(At, {}, 1, X_schedule, opts);
    est.what_hat = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < X_schedule.size(); ++i) {
        est.homogeneous.push_back(exponent_point(X_schedule[i], hom[i]));
        if (i >= X_schedule.size() / 2 && !std::isnan(est.homogeneous.back().exponent)) {
            est.what_hat = std::min(est.what_hat, est.homogeneous.back().exponent);
        }
    }
    return est;
}

} // namespace dioph
