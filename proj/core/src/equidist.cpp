#include "dioph/equidist.hpp"

#include "dioph/error.hpp"

#include <cmath>
#include <numbers>

namespace dioph {

WeylSumResult weyl_sum(const ApproxMatrix& A, std::span<const BigInt> c, std::uint64_t N,
                       const EnumerationOptions& opts) {
    if (c.size() != A.rows()) {
        throw InvalidArgument("frequency vector must have dimension m");
    }
    bool nonzero = false;
    for (const BigInt& ci : c) {
        nonzero = nonzero || ci != 0;
    }
    if (!nonzero || N < 1) {
        throw InvalidArgument("weyl_sum requires c != 0 and N >= 1");
    }
    require_budget(A.cols(), 0, N, opts.budget);

    // Phase c.Aq = (tA c).q
    std::vector<ExactReal> v(A.cols(), ExactReal(0L));
    for (std::size_t j = 0; j < A.cols(); ++j) {
        for (std::size_t i = 0; i < A.rows(); ++i) {
            v[j] += ExactReal(c[i]) * A(i, j);
        }
    }
    const FixedPointMatrix F(ApproxMatrix(1, A.cols(), v));
    constexpr long double kStep = 2.0L * std::numbers::pi_v<long double> / 18446744073709551616.0L;

    long double re = 0.0L, im = 0.0L, phase_err = 0.0L;
    std::uint64_t terms = 0;
    std::uint64_t x = 0;
    for_each_in_annulus(A.cols(), 0, N, [&](std::span<const std::int64_t> q) {
        F.apply(q, std::span<std::uint64_t>(&x, 1));
        const long double angle = static_cast<long double>(static_cast<std::int64_t>(x)) * kStep;
        re += std::cos(angle);
        im += std::sin(angle);
        phase_err += static_cast<long double>(F.error(q)) * kStep;
        ++terms;
        return false;
    });
    const long double k = static_cast<long double>(terms);
    WeylSumResult out;
    out.c.assign(c.begin(), c.end());
    out.N = N;
    out.real = static_cast<double>(re);
    out.imag = static_cast<double>(im);
    out.magnitude = static_cast<double>(std::hypot(re, im));
    out.normalized = out.magnitude / static_cast<double>(k);
    // |e^ia - e^ib| <= |a - b|; per-term libm and summation rounding stay below k * 2^-60 each.
    out.error_radius = static_cast<double>(phase_err + k * k * 1.1e-19L + k * 1e-18L) + 1e-300;
    return out;
}

BigRational counting_ratio(const ApproxMatrix& A, std::span<const BigRational> center, const BigRational& radius,
                           std::uint64_t N, const EnumerationOptions& opts) {
    if (radius <= 0 || radius > BigRational(1, 2)) {
        throw InvalidArgument("counting_ratio requires radius in (0, 1/2]");
    }
    if (N < 1) {
        throw InvalidArgument("counting_ratio requires N >= 1");
    }
    const OrbitTable orbit(A, 0, N, opts);
    const ConstantThreshold t{RootReal(ExactReal(radius))};
    const ThresholdTable table(t, 0, N);
    const FixedTarget target = encode_target(center, A.rows());
    std::uint64_t count = 0;
    orbit.for_each_hit(target, table, Relation::Less, [&](std::size_t) { ++count; });
    BigRational r(BigInt(static_cast<unsigned long>(count)), BigInt(static_cast<unsigned long>(orbit.size())));
    r.canonicalize();
    return r;
}

EquidConstantEstimate estimate_equid_constant(const ApproxMatrix& A,
                                              const std::vector<std::vector<BigRational>>& centers,
                                              const BigRational& radius, std::span<const std::uint64_t> l_values,
                                              const EnumerationOptions& opts) {
    if (centers.empty() || l_values.empty() || radius <= 0) {
        throw InvalidArgument("estimate_equid_constant needs centers, l values and a positive radius");
    }
    std::uint64_t lmax = 0;
    for (std::uint64_t l : l_values) {
        if (l < 1) {
            throw InvalidArgument("l values must be >= 1");
        }
        lmax = std::max(lmax, l);
    }
    const OrbitTable orbit(A, 0, lmax, opts);
    const ConstantThreshold t{RootReal(ExactReal(BigRational(2 * radius)))};
    const ThresholdTable table(t, 0, lmax);

    BigRational volume = 2 * radius;  // |B| = (2r)^m
    {
        BigRational base = volume;
        for (std::size_t i = 1; i < A.rows(); ++i) {
            volume *= base;
        }
    }
    EquidConstantEstimate est;
    est.c_hat = 0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        const FixedTarget target = encode_target(centers[k], A.rows());
        std::vector<std::uint64_t> by_norm(lmax + 1, 0);
        orbit.for_each_hit(target, table, Relation::Less, [&](std::size_t i) { ++by_norm[orbit.norm(i)]; });
        for (std::size_t r = 1; r <= lmax; ++r) {
            by_norm[r] += by_norm[r - 1];
        }
        std::vector<std::uint64_t> row;
        for (std::uint64_t l : l_values) {
            row.push_back(by_norm[l]);
            BigInt ln;
            mpz_ui_pow_ui(ln.get_mpz_t(), l, A.cols());
            const BigRational ratio = BigRational(BigInt(static_cast<unsigned long>(by_norm[l]))) / (ln * volume);
            if (ratio > est.c_hat) {
                est.c_hat = ratio;
                est.argmax_l = l;
                est.argmax_ball = k;
            }
        }
        est.counts.push_back(std::move(row));
    }
    est.recommended = 2 * est.c_hat;
    return est;
}

} // namespace dioph
