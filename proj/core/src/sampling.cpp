#include "dioph/sampling.hpp"

#include "dioph/error.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dioph {

void Window::validate() const {
    if (l < 0 || l >= u) {
        throw InvalidWindow("window requires 0 <= l < u, got " + to_string());
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("DIOPH_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
        throw InvalidArgument(std::string("DIOPH_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BigRational> sample_point(const SamplingOptions& opts, std::uint64_t index, std::size_t m) {
    std::vector<BigRational> b(m);
    if (opts.mode == SamplingMode::MonteCarlo) {
        const std::uint64_t stream = splitmix64(opts.seed ^ splitmix64(index));
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint64_t bits = splitmix64(stream + j) >> 11;
            BigRational v{BigInt(static_cast<unsigned long>(bits))};
            mpz_mul_2exp(v.get_den_mpz_t(), v.get_den_mpz_t(), 53);
            v.canonicalize();
            b[j] = v;
        }
        return b;
    }
    std::uint64_t k = 1;
    while (true) {
        BigInt cells;
        mpz_ui_pow_ui(cells.get_mpz_t(), k, m);
        if (cells >= BigInt(static_cast<unsigned long>(opts.samples))) {
            break;
        }
        ++k;
    }
    std::uint64_t rest = index;
    for (std::size_t j = m; j-- > 0;) {
        const std::uint64_t cell = rest % k;
        rest /= k;
        b[j] = BigRational(BigInt(static_cast<unsigned long>(2 * cell + 1)), BigInt(static_cast<unsigned long>(2 * k)));
        b[j].canonicalize();
    }
    return b;
}

double binomial_sigma(double p, std::uint64_t samples) {
    if (samples == 0) {
        return 0.0;
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

double MeasureEstimate::sigma() const { return binomial_sigma(fraction.get_d(), samples); }

MeasureEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed, Window window) {
    if (samples == 0) {
        throw InvalidArgument("at least one sample is required");
    }
    MeasureEstimate e;
    e.hits = hits;
    e.samples = samples;
    e.seed = seed;
    e.window = std::move(window);
    e.fraction = BigRational(BigInt(static_cast<unsigned long>(hits)), BigInt(static_cast<unsigned long>(samples)));
    e.fraction.canonicalize();

    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(samples);
    const double p = e.fraction.get_d();
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
    BigRational lo(std::max(0.0, center - half));
    BigRational hi(std::min(1.0, center + half));
    e.ci_low = std::min(lo, e.fraction);
    e.ci_high = std::max(hi, e.fraction);
    return e;
}

} // namespace dioph
