#include "dioph/matrix.hpp"

#include "dioph/error.hpp"

#include <fstream>
#include <sstream>

namespace dioph {

IntVec::IntVec(std::vector<BigInt> coords) : coords_(std::move(coords)) {
    for (const auto& c : coords_) {
        BigInt a = abs(c);
        if (a > norm_) {
            norm_ = a;
        }
    }
}

IntVec::IntVec(std::initializer_list<long> coords) {
    std::vector<BigInt> v;
    v.reserve(coords.size());
    for (long c : coords) {
        v.emplace_back(c);
    }
    *this = IntVec(std::move(v));
}

IntVec IntVec::from_int64(std::span<const std::int64_t> coords) {
    std::vector<BigInt> v;
    v.reserve(coords.size());
    for (std::int64_t c : coords) {
        v.emplace_back(static_cast<long>(c));
    }
    return IntVec(std::move(v));
}

std::string IntVec::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        out += (i == 0 ? "" : ",") + coords_[i].get_str();
    }
    return out + ")";
}

ApproxMatrix::ApproxMatrix(std::size_t m, std::size_t n, std::vector<ExactReal> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
    if (m_ == 0 || n_ == 0) {
        throw InvalidArgument("matrix dimensions must be positive");
    }
    if (entries_.size() != m_ * n_) {
        throw InvalidArgument("matrix needs " + std::to_string(m_ * n_) + " entries, got " +
                              std::to_string(entries_.size()));
    }
    const GeneratorPtr* shared = nullptr;
    for (const auto& e : entries_) {
        if (e.is_rational()) {
            continue;
        }
        if (e.kind() == ExactReal::Kind::CFReal && (m_ != 1 || n_ != 1)) {
            throw InvalidArgument("continued-fraction entries are only supported for 1 x 1 matrices");
        }
        if (shared == nullptr) {
            shared = &e.generator();
        } else if (!(*shared)->same_as(*e.generator())) {
            throw InvalidArgument("all irrational entries must share one generator: " + (*shared)->literal() +
                                  " vs " + e.generator()->literal());
        }
    }
}

ApproxMatrix ApproxMatrix::transpose() const {
    std::vector<ExactReal> t;
    t.reserve(entries_.size());
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) {
            t.push_back((*this)(i, j));
        }
    }
    return ApproxMatrix(n_, m_, std::move(t));
}

std::vector<ExactReal> ApproxMatrix::apply(std::span<const BigInt> q) const {
    if (q.size() != n_) {
        throw InvalidArgument("dimension mismatch in A q");
    }
    std::vector<ExactReal> out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (q[j] != 0) {
                out[i] += (*this)(i, j) * ExactReal(q[j]);
            }
        }
    }
    return out;
}

std::vector<ExactReal> ApproxMatrix::apply(std::span<const std::int64_t> q) const {
    std::vector<BigInt> big;
    big.reserve(q.size());
    for (auto v : q) {
        big.emplace_back(static_cast<long>(v));
    }
    return apply(std::span<const BigInt>(big));
}

std::vector<ExactReal> ApproxMatrix::residual(std::span<const std::int64_t> q, std::span<const BigRational> b) const {
    std::vector<ExactReal> v = apply(q);
    if (b.size() != m_) {
        throw InvalidArgument("target dimension mismatch");
    }
    for (std::size_t i = 0; i < m_; ++i) {
        v[i] -= ExactReal(b[i]);
    }
    return v;
}

bool ApproxMatrix::has_continued_fraction() const {
    for (const auto& e : entries_) {
        if (e.kind() == ExactReal::Kind::CFReal) {
            return true;
        }
    }
    return false;
}

bool ApproxMatrix::all_rational() const {
    for (const auto& e : entries_) {
        if (!e.is_rational()) {
            return false;
        }
    }
    return true;
}

std::string ApproxMatrix::to_text() const {
    std::ostringstream out;
    out << m_ << ' ' << n_ << '\n';
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out << (j == 0 ? "" : " ") << (*this)(i, j).to_string();
        }
        out << '\n';
    }
    return out.str();
}

ApproxMatrix parse_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t m = 0, n = 0;
    if (!(in >> m >> n) || m == 0 || n == 0) {
        throw ParseError("matrix header must be 'm n' with positive integers");
    }
    std::vector<ExactReal> entries;
    std::string tok;
    while (in >> tok) {
        entries.push_back(parse_exact_real(tok));
    }
    if (entries.size() != m * n) {
        throw ParseError("matrix expects " + std::to_string(m * n) + " entries, found " + std::to_string(entries.size()));
    }
    try {
        return ApproxMatrix(m, n, std::move(entries));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

ApproxMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open matrix file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

std::vector<BigRational> parse_rational_vector(std::string_view text) {
    std::string s(text);
    for (auto& c : s) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream in(s);
    std::vector<BigRational> out;
    std::string tok;
    while (in >> tok) {
        ExactReal v = parse_exact_real(tok);
        if (!v.is_rational()) {
            throw ParseError("expected a rational, got " + tok);
        }
        out.push_back(v.as_rational());
    }
    return out;
}

std::string to_string(std::span<const BigRational> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : " ") + to_string(v[i]);
    }
    return out;
}

} // namespace dioph
