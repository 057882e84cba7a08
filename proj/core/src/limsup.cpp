#include "dioph/limsup.hpp"

#include "dioph/error.hpp"

#include <cmath>

namespace dioph {

namespace {

BigRational pow2(long e) {
    BigRational r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

ExactReal half_eps_factor(const ExactReal& epsilon, std::size_t m) {
    return (epsilon.pow(static_cast<unsigned>(m)).inverse() + ExactReal(1L)) / ExactReal(2L);
}

/// For each sample, the index of its first witness in `orbit` (or none).
std::vector<std::optional<std::uint64_t>> first_witness_norms(const OrbitTable& orbit, const ThresholdTable& table,
                                                              const SamplingOptions& sampling, std::size_t m,
                                                              std::span<const BigRational> center,
                                                              const BigRational* radius) {
    std::vector<std::optional<std::uint64_t>> out(sampling.batch());
    parallel_for(out.size(), resolve_threads(sampling.threads), [&](std::size_t i) {
        std::vector<BigRational> b = sample_point(sampling, sampling.first + i, m);
        if (radius != nullptr) {
            for (std::size_t j = 0; j < m; ++j) {
                b[j] = center[j] + *radius * (2 * b[j] - 1);
            }
        }
        const FixedTarget target = encode_target(b, m);
        if (const auto idx = orbit.find_first(target, table, Relation::Less)) {
            out[i] = orbit.norm(*idx);
        }
    });
    return out;
}

std::vector<std::uint64_t> schedule_bounds(const BigInt& l, std::span<const BigInt> uppers) {
    if (uppers.empty()) {
        throw InvalidArgument("window schedule is empty");
    }
    std::vector<std::uint64_t> out;
    for (std::size_t j = 0; j < uppers.size(); ++j) {
        Window{l, uppers[j]}.validate();
        if (j > 0 && uppers[j] <= uppers[j - 1]) {
            throw InvalidArgument("window schedule upper bounds must increase");
        }
        out.push_back(norm_bound(uppers[j]));
    }
    return out;
}

std::vector<std::uint64_t> schedule_hits(const std::vector<std::optional<std::uint64_t>>& first,
                                         std::span<const std::uint64_t> uppers) {
    std::vector<std::uint64_t> hits(uppers.size(), 0);
    for (const auto& f : first) {
        for (std::size_t j = 0; j < uppers.size(); ++j) {
            if (f && *f <= uppers[j]) {
                ++hits[j];
            }
        }
    }
    return hits;
}

} // namespace

std::optional<IntVec> psi_witness(const ApproxMatrix& A, std::span<const BigRational> b, const ApproxFunction& psi,
                                  const Window& w, const EnumerationOptions& opts) {
    w.validate();
    const PsiThreshold t(psi);
    return search_first(A, b, norm_bound(w.l + 1), norm_bound(w.u), t, Relation::Less, opts);
}

bool delta_membership(const ApproxMatrix& A, std::span<const BigRational> x, const RootReal& rho, const Window& w,
                      const EnumerationOptions& opts) {
    w.validate();
    const ConstantThreshold t(rho);
    return search_first(A, x, norm_bound(w.l + 1), norm_bound(w.u), t, Relation::Less, opts).has_value();
}

RootReal ubiquity_c2(const ExactReal& epsilon, std::size_t m, std::size_t n) {
    const ExactReal K = half_eps_factor(epsilon, m);
    return RootReal(epsilon.pow(static_cast<unsigned>(m)) * K.pow(static_cast<unsigned>(m + n)), static_cast<unsigned>(m))
        .simplified();
}

BigRational ubiquity_c1(const RootReal& c2, const BigRational& equid_constant, std::size_t m, std::size_t n) {
    if (equid_constant <= 0) {
        throw InvalidArgument("equidistribution constant must be positive");
    }
    const ExactReal c2m = c2.pow(static_cast<unsigned>(m)).exact();
    const ExactReal base = ExactReal(pow2(static_cast<long>(m))) * c2m * ExactReal(equid_constant);
    for (long j = 1; j < 1L << 16; ++j) {
        if (certainly_less(base * ExactReal(pow2(-j * static_cast<long>(n))), ExactReal(BigRational(1, 2)))) {
            return pow2(-j);
        }
    }
    throw InvalidArgument("no power of 1/2 satisfies the c1 constraint");
}

UbiquityParams ubiquity_params(const ApproxMatrix& A, const ExactReal& epsilon, long ell_max,
                               const BigRational& equid_constant, const EnumerationOptions& opts) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    UbiquityParams p;
    p.epsilon = epsilon;
    p.m = m;
    p.n = n;
    p.equid_constant = equid_constant;
    p.returns = return_sequence(A, epsilon, ell_max, opts);
    if (p.returns.levels.empty()) {
        throw InsufficientData("return sequence up to level " + std::to_string(ell_max) + " is empty");
    }
    p.c2 = ubiquity_c2(epsilon, m, n);
    p.c1 = ubiquity_c1(p.c2, equid_constant, m, n);
    const ExactReal K = half_eps_factor(epsilon, m);
    const ExactReal c2m = p.c2.pow(static_cast<unsigned>(m)).exact();
    for (long ell : p.returns.levels) {
        UbiquityLevel lv;
        lv.ell = ell;
        lv.u = K * ExactReal(pow2(ell));
        lv.l = ExactReal(p.c1) * lv.u;
        lv.rho = RootReal(c2m / lv.u.pow(static_cast<unsigned>(n)), static_cast<unsigned>(m)).simplified();
        lv.window = Window{floor(lv.l), floor(lv.u)};
        p.levels.push_back(std::move(lv));
    }
    return p;
}

CoverageLevel coverage(const ApproxMatrix& A, const UbiquityParams& params, std::span<const BigRational> center,
                       const BigRational& radius, std::size_t level_index, const SamplingOptions& sampling,
                       const EnumerationOptions& opts) {
    if (level_index >= params.levels.size()) {
        throw InvalidArgument("level index " + std::to_string(level_index) + " beyond the computed horizon");
    }
    if (center.size() != A.rows() || radius <= 0) {
        throw InvalidArgument("ball must have dimension m and positive radius");
    }
    const UbiquityLevel& lv = params.levels[level_index];
    lv.window.validate();
    CoverageLevel out{lv.ell, lv.window, lv.u, lv.l, lv.rho, {}};
    if (compare(lv.rho, RootReal(ExactReal(BigRational(1, 2)))).is_greater()) {
        out.covered = make_estimate(sampling.batch(), sampling.batch(), sampling.seed, lv.window);
        return out;
    }
    const std::uint64_t lo = norm_bound(lv.window.l + 1);
    const std::uint64_t hi = norm_bound(lv.window.u);
    const OrbitTable orbit(A, lo, hi, opts);
    const ConstantThreshold t(lv.rho);
    const ThresholdTable table(t, lo, hi);
    const auto first = first_witness_norms(orbit, table, sampling, A.rows(), center, &radius);
    std::uint64_t hits = 0;
    for (const auto& f : first) {
        hits += f ? 1 : 0;
    }
    out.covered = make_estimate(hits, sampling.batch(), sampling.seed, lv.window);
    return out;
}

CoverageReport coverage_report(const ApproxMatrix& A, const UbiquityParams& params, std::span<const BigRational> center,
                               const BigRational& radius, std::span<const std::size_t> level_indices,
                               const SamplingOptions& sampling, const EnumerationOptions& opts) {
    CoverageReport r{{center.begin(), center.end()}, radius, {}};
    for (std::size_t i : level_indices) {
        r.levels.push_back(coverage(A, params, center, radius, i, sampling, opts));
    }
    return r;
}

bool check_u_regular(const UbiquityParams& params, const RootReal& lambda) {
    if (params.levels.size() < 2) {
        throw InsufficientData("u-regularity needs at least two levels");
    }
    for (std::size_t i = 0; i + 1 < params.levels.size(); ++i) {
        if (!certainly_less_equal(params.levels[i + 1].rho, lambda * params.levels[i].rho)) {
            return false;
        }
    }
    return true;
}

std::vector<MeasureEstimate> measure_W_schedule(const ApproxMatrix& A, const ApproxFunction& psi, const BigInt& l,
                                                std::span<const BigInt> uppers, const SamplingOptions& sampling,
                                                const EnumerationOptions& opts) {
    const std::vector<std::uint64_t> us = schedule_bounds(l, uppers);
    const std::uint64_t lo = norm_bound(l + 1);
    const OrbitTable orbit(A, lo, us.back(), opts);
    const PsiThreshold t(psi);
    const ThresholdTable table(t, lo, us.back());
    const auto first = first_witness_norms(orbit, table, sampling, A.rows(), {}, nullptr);
    const std::vector<std::uint64_t> hits = schedule_hits(first, us);
    std::vector<MeasureEstimate> out;
    for (std::size_t j = 0; j < us.size(); ++j) {
        out.push_back(make_estimate(hits[j], sampling.batch(), sampling.seed, Window{l, uppers[j]}));
    }
    return out;
}

MeasureEstimate measure_W(const ApproxMatrix& A, const ApproxFunction& psi, const Window& w,
                          const SamplingOptions& sampling, const EnumerationOptions& opts) {
    const BigInt u[] = {w.u};
    return measure_W_schedule(A, psi, w.l, u, sampling, opts).front();
}

std::vector<MeasureEstimate> measure_Bad_schedule(const ApproxMatrix& A, const BigRational& delta, const BigInt& l,
                                                  std::span<const BigInt> uppers, const SamplingOptions& sampling,
                                                  const EnumerationOptions& opts) {
    if (delta <= 0) {
        throw InvalidArgument("delta must be positive");
    }
    const ApproxFunction psi =
        ApproxFunction::power_log(delta, BigRational(BigInt(static_cast<unsigned long>(A.cols())),
                                                     BigInt(static_cast<unsigned long>(A.rows()))));
    std::vector<MeasureEstimate> w = measure_W_schedule(A, psi, l, uppers, sampling, opts);
    for (MeasureEstimate& e : w) {
        e = make_estimate(e.samples - e.hits, e.samples, e.seed, e.window);
    }
    return w;
}

MeasureEstimate measure_Bad(const ApproxMatrix& A, const BigRational& delta, const Window& w,
                            const SamplingOptions& sampling, const EnumerationOptions& opts) {
    const BigInt u[] = {w.u};
    return measure_Bad_schedule(A, delta, w.l, u, sampling, opts).front();
}

double hausdorff_cantelli_sum(const ApproxFunction& psi, std::size_t m, std::size_t n, const Window& w) {
    w.validate();
    const std::uint64_t lo = norm_bound(w.l + 1);
    const std::uint64_t hi = norm_bound(w.u);
    long double sum = 0.0L;
    for (std::uint64_t r = lo; r <= hi; ++r) {
        const long double rr = static_cast<long double>(r);
        const long double shell = std::pow(2 * rr + 1, static_cast<long double>(n)) -
                                  (r == 0 ? 0.0L : std::pow(2 * rr - 1, static_cast<long double>(n)));
        sum += shell * std::pow(2.0L * static_cast<long double>(psi.approx_at(static_cast<double>(r))),
                                static_cast<long double>(m));
    }
    return static_cast<double>(sum);
}

} // namespace dioph
