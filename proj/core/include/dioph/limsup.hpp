#pragma once

#include "dioph/approx_function.hpp"
#include "dioph/lattice.hpp"
#include "dioph/matrix.hpp"
#include "dioph/orbit.hpp"
#include "dioph/root_real.hpp"
#include "dioph/sampling.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dioph {

/// First q with l < ||q|| <= u and ||Aq - b||_Z < psi(||q||), or none.
std::optional<IntVec> psi_witness(const ApproxMatrix& A, std::span<const BigRational> b, const ApproxFunction& psi,
                                  const Window& w, const EnumerationOptions& opts = {});

/// Whether some q with l < ||q|| <= u has ||Aq - x||_Z < rho.
bool delta_membership(const ApproxMatrix& A, std::span<const BigRational> x, const RootReal& rho, const Window& w,
                      const EnumerationOptions& opts = {});

struct UbiquityLevel {
    long ell = 0;
    ExactReal u;    // (eps^-m + 1) 2^ell / 2
    ExactReal l;    // c1 u
    RootReal rho;   // c2 u^(-n/m)
    Window window;  // (floor l, floor u]
};

struct UbiquityParams {
    ExactReal epsilon;
    BigRational c1;
    RootReal c2;  // eps ((eps^-m + 1)/2)^(1 + n/m)
    BigRational equid_constant;
    ReturnSequence returns;
    std::vector<UbiquityLevel> levels;
    std::size_t m = 1;
    std::size_t n = 1;
};

/// c2 = eps ((eps^-m + 1)/2)^(1 + n/m) as an exact m-th root.
RootReal ubiquity_c2(const ExactReal& epsilon, std::size_t m, std::size_t n);

/// Largest c1 = 2^-j (j >= 1) with (2 c2)^m C c1^n < 1/2.
BigRational ubiquity_c1(const RootReal& c2, const BigRational& equid_constant, std::size_t m, std::size_t n);

/// Throws InsufficientData if the return sequence up to ell_max is empty.
UbiquityParams ubiquity_params(const ApproxMatrix& A, const ExactReal& epsilon, long ell_max,
                               const BigRational& equid_constant, const EnumerationOptions& opts = {});

struct CoverageLevel {
    long ell = 0;
    Window window;
    ExactReal u;
    ExactReal l;
    RootReal rho;
    MeasureEstimate covered;
};

struct CoverageReport {
    std::vector<BigRational> center;
    BigRational radius;
    std::vector<CoverageLevel> levels;
};

/// Monte Carlo covered fraction of the sup-ball B(center, radius) by the rho_i
/// neighbourhoods of A q, l_i < ||q|| <= u_i. Short-circuits to 1 when rho_i > 1/2.
CoverageLevel coverage(const ApproxMatrix& A, const UbiquityParams& params, std::span<const BigRational> center,
                       const BigRational& radius, std::size_t level_index, const SamplingOptions& sampling,
                       const EnumerationOptions& opts = {});

CoverageReport coverage_report(const ApproxMatrix& A, const UbiquityParams& params, std::span<const BigRational> center,
                               const BigRational& radius, std::span<const std::size_t> level_indices,
                               const SamplingOptions& sampling, const EnumerationOptions& opts = {});

/// rho_{i+1} <= lambda rho_i for all consecutive levels; needs two levels.
bool check_u_regular(const UbiquityParams& params, const RootReal& lambda);

/// Fraction of sampled b with a psi-witness in the window.
MeasureEstimate measure_W(const ApproxMatrix& A, const ApproxFunction& psi, const Window& w,
                          const SamplingOptions& sampling, const EnumerationOptions& opts = {});

/// measure_W for windows (l, u_j] on one sample set; u_j increasing.
std::vector<MeasureEstimate> measure_W_schedule(const ApproxMatrix& A, const ApproxFunction& psi, const BigInt& l,
                                                std::span<const BigInt> uppers, const SamplingOptions& sampling,
                                                const EnumerationOptions& opts = {});

/// Fraction of sampled b with no witness for psi(q) = delta q^(-n/m) in the window.
MeasureEstimate measure_Bad(const ApproxMatrix& A, const BigRational& delta, const Window& w,
                            const SamplingOptions& sampling, const EnumerationOptions& opts = {});

std::vector<MeasureEstimate> measure_Bad_schedule(const ApproxMatrix& A, const BigRational& delta, const BigInt& l,
                                                  std::span<const BigInt> uppers, const SamplingOptions& sampling,
                                                  const EnumerationOptions& opts = {});

/// sum over l < ||q|| <= u of (2 psi(||q||))^m.
double hausdorff_cantelli_sum(const ApproxFunction& psi, std::size_t m, std::size_t n, const Window& w);

} // namespace dioph
