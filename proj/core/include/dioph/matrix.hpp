#pragma once

#include "dioph/exact_real.hpp"

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

/// Integer vector with its sup-norm cached.
class IntVec {
public:
    IntVec() = default;
    explicit IntVec(std::vector<BigInt> coords);
    IntVec(std::initializer_list<long> coords);
    static IntVec from_int64(std::span<const std::int64_t> coords);

    std::span<const BigInt> coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    const BigInt& norm() const { return norm_; }
    const BigInt& operator[](std::size_t i) const { return coords_[i]; }

    std::string to_string() const;

    friend bool operator==(const IntVec& a, const IntVec& b) { return a.coords_ == b.coords_; }

private:
    std::vector<BigInt> coords_;
    BigInt norm_ = 0;
};

/// m x n matrix of ExactReal entries. All non-rational entries share one
/// generator; continued-fraction entries are only allowed for 1 x 1 matrices.
class ApproxMatrix {
public:
    ApproxMatrix(std::size_t m, std::size_t n, std::vector<ExactReal> entries);
    static ApproxMatrix scalar(ExactReal alpha) { return ApproxMatrix(1, 1, {std::move(alpha)}); }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    const ExactReal& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    std::span<const ExactReal> entries() const { return entries_; }

    ApproxMatrix transpose() const;

    /// A q for q in Z^n.
    std::vector<ExactReal> apply(std::span<const BigInt> q) const;
    std::vector<ExactReal> apply(std::span<const std::int64_t> q) const;
    /// A q - b.
    std::vector<ExactReal> residual(std::span<const std::int64_t> q, std::span<const BigRational> b) const;

    bool has_continued_fraction() const;
    bool all_rational() const;

    /// "m n" line followed by m rows of literals.
    std::string to_text() const;

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<ExactReal> entries_;
};

ApproxMatrix parse_matrix(std::string_view text);
ApproxMatrix load_matrix(const std::filesystem::path& path);

/// Rational vector literal: whitespace- or comma-separated "p/q" items.
std::vector<BigRational> parse_rational_vector(std::string_view text);
std::string to_string(std::span<const BigRational> v);

} // namespace dioph
