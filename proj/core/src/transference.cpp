#include "dioph/transference.hpp"

#include "dioph/error.hpp"
#include "dioph/lattice.hpp"
#include "dioph/sampling.hpp"

namespace dioph {

TransferBounds transfer_bounds(const RootReal& C, const BigInt& X, std::size_t m, std::size_t n) {
    if (certain_sign(C.numerator()) <= 0) {
        throw InvalidArgument("transfer_bounds requires C > 0");
    }
    if (X < 1) {
        throw InvalidArgument("transfer_bounds requires X >= 1");
    }
    BigInt xn;
    mpz_pow_ui(xn.get_mpz_t(), X.get_mpz_t(), n);
    const RootReal hr = (C.pow(static_cast<unsigned>(m)) * RootReal(ExactReal(xn))).inverse().simplified();
    if (!hr.is_exact()) {
        throw Unsupported("h = X^-n C^-m = " + hr.to_string() + " is not in the field of C");
    }
    const ExactReal h = hr.exact();
    const ExactReal half_h1 = (h + ExactReal(1L)) / ExactReal(2L);
    TransferBounds out{C, X, h, (RootReal(half_h1) * C).simplified(), half_h1 * ExactReal(X), m, n};
    return out;
}

std::optional<IntVec> solve_inhomogeneous(const ApproxMatrix& A, std::span<const BigRational> b, const RootReal& C1,
                                          const ExactReal& X1, const EnumerationOptions& opts) {
    if (certain_sign(C1.numerator()) <= 0) {
        throw InvalidArgument("solve_inhomogeneous requires C1 > 0");
    }
    if (!certainly_less_equal(ExactReal(1L), X1)) {
        throw InvalidArgument("solve_inhomogeneous requires X1 >= 1");
    }
    const ConstantThreshold t(C1);
    return search_first(A, b, 0, norm_bound(floor(X1)), t, Relation::LessEqual, opts);
}

CorollaryReport verify_corollary_3_3(const ApproxMatrix& A, const ExactReal& epsilon, long ell,
                                     const std::vector<std::vector<BigRational>>& targets,
                                     const EnumerationOptions& opts, unsigned threads) {
    const RootReal C = return_threshold(epsilon, ell, A.rows(), A.cols());
    BigInt X = 1;
    mpz_mul_2exp(X.get_mpz_t(), X.get_mpz_t(), static_cast<mp_bitcnt_t>(ell));
    if (solve_homogeneous(A, C, X, opts)) {
        throw InvalidArgument("level " + std::to_string(ell) + " is not in the return sequence for epsilon = " +
                              epsilon.to_string());
    }
    CorollaryReport report{epsilon, ell, transfer_bounds(C, X, A.rows(), A.cols()), {}, 0, false};
    const std::uint64_t hi = norm_bound(floor(report.bounds.X1));
    const OrbitTable orbit(A, 0, hi, opts);
    const ConstantThreshold t(report.bounds.C1);
    const ThresholdTable table(t, 0, hi);
    const double c1 = report.bounds.C1.approx();

    report.targets.resize(targets.size());
    parallel_for(targets.size(), threads, [&](std::size_t i) {
        TargetOutcome& out = report.targets[i];
        out.b = targets[i];
        const FixedTarget target = encode_target(out.b, A.rows());
        if (const auto idx = orbit.find_first(target, table, Relation::LessEqual)) {
            out.witness = orbit.vec(*idx);
            out.lhs = orbit.exact_dist(*idx, target.exact);
            out.slack = c1 - out.lhs->approx();
        }
    });
    for (const TargetOutcome& o : report.targets) {
        report.successes += o.witness ? 1 : 0;
    }
    report.violation = report.successes != report.targets.size();
    return report;
}

} // namespace dioph
