#include "dioph/report.hpp"

#include "dioph/version.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>

namespace dioph {

namespace {

Json double_json(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

Json opt_intvec(const std::optional<IntVec>& v) { return v ? intvec_json(*v) : Json(nullptr); }

} // namespace

Json real_json(const ExactReal& x) { return {{"exact", x.to_string()}, {"decimal", x.to_decimal(12)}}; }

Json real_json(const RootReal& x) { return {{"exact", x.to_string()}, {"decimal", x.to_decimal(12)}}; }

Json rational_json(const BigRational& x) { return {{"exact", to_string(x)}, {"decimal", decimal(x, 12)}}; }

Json vector_json(std::span<const BigRational> v) {
    Json out = Json::array();
    for (const BigRational& x : v) {
        out.push_back(to_string(x));
    }
    return out;
}

Json intvec_json(const IntVec& v) {
    Json out = Json::array();
    for (const BigInt& c : v.coords()) {
        out.push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
    }
    return out;
}

Json to_json(const ApproxMatrix& A) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < A.cols(); ++j) {
            row.push_back(A(i, j).to_string());
        }
        rows.push_back(std::move(row));
    }
    return {{"m", A.rows()}, {"n", A.cols()}, {"entries", std::move(rows)}};
}

Json to_json(const ApproxFunction& psi) {
    Json j{{"description", psi.to_string()}};
    if (psi.kind() == ApproxFunction::Kind::PowerLog) {
        j["kind"] = "power_log";
        j["c"] = to_string(psi.c());
        j["a"] = to_string(psi.a());
        j["beta"] = to_string(psi.beta());
    } else {
        j["kind"] = "table";
        Json steps = Json::array();
        for (const auto& [q, v] : psi.steps()) {
            steps.push_back({q.get_str(), to_string(v)});
        }
        j["steps"] = std::move(steps);
    }
    return j;
}

Json to_json(const ReturnSequence& r) {
    return {{"epsilon", real_json(r.epsilon)}, {"ell_max", r.ell_max}, {"levels", r.levels}};
}

Json to_json(const BadWitness& w) { return {{"min_value", real_json(w.min_value)}, {"argmin", intvec_json(w.argmin)}}; }

Json to_json(const BestApproxSequence& s) {
    Json entries = Json::array();
    for (const BestApprox& e : s.entries) {
        entries.push_back({{"y", intvec_json(e.y)}, {"Y", e.Y.get_str()}, {"M", real_json(e.M)}});
    }
    return {{"horizon", s.horizon.get_str()}, {"entries", std::move(entries)}};
}

Json to_json(const ContinuedFraction& cf) {
    Json q = Json::array();
    for (const BigInt& a : cf.quotients) {
        q.push_back(a.get_str());
    }
    Json j{{"quotients", std::move(q)}, {"terminated", cf.terminated}};
    if (cf.period_start) {
        Json p = Json::array();
        for (const BigInt& a : cf.period) {
            p.push_back(a.get_str());
        }
        j["period_start"] = *cf.period_start;
        j["period"] = std::move(p);
    }
    return j;
}

Json to_json(const TransferBounds& b) {
    return {{"m", b.m},          {"n", b.n},          {"C", real_json(b.C)},   {"X", b.X.get_str()},
            {"h", real_json(b.h)}, {"C1", real_json(b.C1)}, {"X1", real_json(b.X1)}};
}

Json to_json(const CorollaryReport& r) {
    Json targets = Json::array();
    for (const TargetOutcome& t : r.targets) {
        targets.push_back({{"b", vector_json(t.b)},
                           {"witness_q", opt_intvec(t.witness)},
                           {"lhs_value", t.lhs ? real_json(*t.lhs) : Json(nullptr)},
                           {"slack", double_json(t.slack)}});
    }
    Json j{{"epsilon", real_json(r.epsilon)}, {"ell", r.ell}};
    j["C1"] = real_json(r.bounds.C1);
    j["X1"] = real_json(r.bounds.X1);
    j["h"] = real_json(r.bounds.h);
    j["successes"] = r.successes;
    j["violation"] = r.violation;
    j["targets"] = std::move(targets);
    return j;
}

Json to_json(const MeasureEstimate& e) {
    return {{"window", e.window.to_string()},
            {"samples", e.samples},
            {"hits", e.hits},
            {"fraction", rational_json(e.fraction)},
            {"ci_low", decimal(e.ci_low, 12)},
            {"ci_high", decimal(e.ci_high, 12)},
            {"sigma", double_json(e.sigma())},
            {"seed", e.seed}};
}

Json to_json(const UbiquityParams& p) {
    Json levels = Json::array();
    for (const UbiquityLevel& lv : p.levels) {
        levels.push_back({{"ell", lv.ell},
                          {"u", real_json(lv.u)},
                          {"l", real_json(lv.l)},
                          {"rho", real_json(lv.rho)},
                          {"window", lv.window.to_string()}});
    }
    return {{"epsilon", real_json(p.epsilon)},
            {"m", p.m},
            {"n", p.n},
            {"equid_constant", rational_json(p.equid_constant)},
            {"c1", rational_json(p.c1)},
            {"c2", real_json(p.c2)},
            {"returns", to_json(p.returns)},
            {"levels", std::move(levels)}};
}

Json to_json(const CoverageReport& r) {
    Json levels = Json::array();
    for (const CoverageLevel& lv : r.levels) {
        levels.push_back({{"ell", lv.ell},
                          {"window", lv.window.to_string()},
                          {"rho", real_json(lv.rho)},
                          {"covered", to_json(lv.covered)}});
    }
    return {{"center", vector_json(r.center)}, {"radius", to_string(r.radius)}, {"levels", std::move(levels)}};
}

Json to_json(const WeylSumResult& w) {
    Json c = Json::array();
    for (const BigInt& x : w.c) {
        c.push_back(x.get_str());
    }
    return {{"c", std::move(c)},
            {"N", w.N},
            {"real", double_json(w.real)},
            {"imag", double_json(w.imag)},
            {"magnitude", double_json(w.magnitude)},
            {"normalized", double_json(w.normalized)},
            {"error_radius", double_json(w.error_radius)}};
}

Json to_json(const EquidConstantEstimate& e) {
    return {{"c_hat", rational_json(e.c_hat)},
            {"recommended", rational_json(e.recommended)},
            {"argmax_l", e.argmax_l},
            {"argmax_ball", e.argmax_ball},
            {"counts", e.counts}};
}

Json to_json(const SeriesVerdict& v) {
    Json partial = Json::array();
    for (const PartialSum& p : v.partial_sums) {
        partial.push_back({{"horizon", p.horizon.get_str()}, {"value", double_json(p.value)}});
    }
    return {{"status", std::string(to_string(v.status))},
            {"rationale", v.rationale},
            {"trend", std::string(to_string(v.trend))},
            {"tail_exponent", double_json(v.tail_exponent)},
            {"partial_sums", std::move(partial)}};
}

Json to_json(const CounterpartReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.k.size(); ++i) {
        Json row{{"k", r.k[i]},
                 {"gamma", real_json(r.gamma[i])},
                 {"U", real_json(r.U[i])},
                 {"V", real_json(r.V[i])},
                 {"U_lt_V", static_cast<bool>(r.U_lt_V[i])},
                 {"gamma_partial_sum", double_json(r.gamma_partial_sums[i])}};
        if (i < r.U_next_le_V.size()) {
            row["U_next_le_V"] = static_cast<bool>(r.U_next_le_V[i]);
        }
        rows.push_back(std::move(row));
    }
    return {{"m", r.m},
            {"n", r.n},
            {"V_increasing", r.V_increasing},
            {"gamma_sum", {{"lo", decimal(r.gamma_sum.lo, 12)}, {"hi", decimal(r.gamma_sum.hi, 12)}}},
            {"rows", std::move(rows)}};
}

Json to_json(const Prop51Report& r) {
    Json ranges = Json::array();
    for (const auto& [lo, hi] : r.ranges) {
        ranges.push_back({lo.get_str(), hi.get_str()});
    }
    Json violating = Json::array();
    for (const auto& [q, k] : r.violating) {
        violating.push_back({{"q", intvec_json(q)}, {"k", k}});
    }
    return {{"precondition", r.precondition},
            {"k_first", r.k_first},
            {"k_last", r.k_last},
            {"ranges", std::move(ranges)},
            {"tested", r.tested},
            {"violations", r.violations},
            {"violating", std::move(violating)},
            {"binding_histogram", r.binding_histogram}};
}

Json to_json(const ExponentEstimate& e) {
    auto points = [](const std::vector<ExponentPoint>& ps) {
        Json out = Json::array();
        for (const ExponentPoint& p : ps) {
            out.push_back({{"X", p.X.get_str()},
                           {"best", p.best ? real_json(*p.best) : Json(nullptr)},
                           {"exponent", double_json(p.exponent)},
                           {"exact_hit", p.exact_hit}});
        }
        return out;
    };
    Json j{{"homogeneous", points(e.homogeneous)}, {"what_hat", double_json(e.what_hat)}};
    if (!e.inhomogeneous.empty()) {
        j["inhomogeneous"] = points(e.inhomogeneous);
        j["w_hat"] = double_json(e.w_hat);
    }
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const nlohmann::json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return std::string("fnv1a64:") + buf;
}

Json versions_json() {
    return {{"dioph", DIOPH_VERSION}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()}};
}

Json envelope(std::string_view command, const nlohmann::json& config, std::uint64_t seed, Json result) {
    return {{"tool", "dioph"},
            {"versions", versions_json()},
            {"command", std::string(command)},
            {"config", Json::parse(config.dump())},
            {"config_hash", config_hash(config)},
            {"seed", seed},
            {"result", std::move(result)}};
}

} // namespace dioph
