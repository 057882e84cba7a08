#include "commands.hpp"

#include "dioph/analysis.hpp"
#include "dioph/equidist.hpp"
#include "dioph/error.hpp"
#include "dioph/lattice.hpp"
#include "dioph/limsup.hpp"
#include "dioph/transference.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace dioph::cli {

namespace {

constexpr std::uint64_t kBatch = 1000;

EnumerationOptions enumeration(const Config& cfg) {
    EnumerationOptions o;
    o.budget = unsigned64(cfg, "budget");
    if (o.budget == 0) {
        throw InvalidArgument("config key 'budget': must be positive");
    }
    return o;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string vec_text(const IntVec& v) {
    std::string out;
    for (const BigInt& c : v.coords()) {
        out += (out.empty() ? "" : " ") + c.get_str();
    }
    return out;
}

/// Runs step(first, count) over [done, total) in fixed batches. After the first
/// batch of this invocation, stops early once the soft wall has passed.
std::uint64_t run_batches(std::uint64_t total, std::uint64_t done, const Config& cfg, const RunContext& ctx,
                          const std::function<void(std::uint64_t, std::uint64_t)>& step) {
    const auto wall = std::chrono::seconds(unsigned64(cfg, "wall_seconds"));
    bool first = true;
    while (done < total) {
        if (!first && std::chrono::steady_clock::now() - ctx.start >= wall) {
            break;
        }
        const std::uint64_t count = std::min(kBatch, total - done);
        step(done, count);
        done += count;
        first = false;
    }
    return done;
}

std::vector<std::uint64_t> resumed_hits(const RunContext& ctx, std::size_t size, std::uint64_t& done) {
    std::vector<std::uint64_t> hits(size, 0);
    done = 0;
    if (ctx.resume) {
        done = ctx.resume->at("completed").get<std::uint64_t>();
        hits = ctx.resume->at("hits").get<std::vector<std::uint64_t>>();
        if (hits.size() != size) {
            throw InvalidArgument("resume state does not match the configured schedule");
        }
    }
    return hits;
}

Table estimate_table(const std::vector<MeasureEstimate>& es) {
    Table t{{"window", "samples", "hits", "fraction", "ci_low", "ci_high", "sigma"}, {}};
    for (const auto& e : es) {
        t.rows.push_back({e.window.to_string(), std::to_string(e.samples), std::to_string(e.hits),
                          decimal(e.fraction, 12), decimal(e.ci_low, 12), decimal(e.ci_high, 12), num(e.sigma())});
    }
    return t;
}

void mark_partial(Outcome& out, std::uint64_t done, std::uint64_t total, Json state) {
    out.result["completed_samples"] = done;
    out.partial = done < total;
    if (out.partial) {
        state["completed"] = done;
        out.result["state"] = std::move(state);
    }
}

Outcome run_return_seq(const Config& cfg, const RunContext&) {
    const ApproxMatrix A = matrix(cfg);
    const ReturnSequence r = return_sequence(A, real(cfg, "epsilon"), signed_long(cfg, "ell_max"), enumeration(cfg));
    Outcome out{{{"matrix", to_json(A)}}, {{"ell", "is_return"}, {}}};
    out.result.update(to_json(r));
    for (long ell = 1; ell <= r.ell_max; ++ell) {
        const bool hit = std::binary_search(r.levels.begin(), r.levels.end(), ell);
        out.table.rows.push_back({std::to_string(ell), hit ? "1" : "0"});
    }
    return out;
}

Outcome run_best_approx(const Config& cfg, const RunContext&) {
    const ApproxMatrix A = matrix(cfg);
    const std::uint64_t cf_count = unsigned64(cfg, "cf_count");
    Outcome out{{{"matrix", to_json(A)}}, {{"k", "y", "Y", "M", "M_decimal"}, {}}};
    BestApproxSequence best;
    if (cf_count > 0) {
        if (A.rows() != 1 || A.cols() != 1) {
            throw InvalidArgument("cf_count applies to 1 x 1 matrices only");
        }
        best = best_approximations_from_cf(A(0, 0), cf_count);
        out.result["route"] = "continued_fraction";
    } else {
        best = best_approximations(A, integer(cfg, "y_max"), enumeration(cfg));
        out.result["route"] = "scan";
    }
    out.result["best"] = to_json(best);
    if (A.rows() == 1 && A.cols() == 1) {
        const ContinuedFraction cf = continued_fraction(A(0, 0), unsigned64(cfg, "cf_terms"));
        out.result["continued_fraction"] = to_json(cf);
        Json dens = Json::array();
        for (const BigInt& q : convergent_denominators(cf.quotients)) {
            dens.push_back(q.get_str());
        }
        out.result["convergent_denominators"] = std::move(dens);
    }
    for (std::size_t k = 0; k < best.entries.size(); ++k) {
        const BestApprox& e = best.entries[k];
        out.table.rows.push_back({std::to_string(k + 1), vec_text(e.y), e.Y.get_str(), e.M.to_string(), e.M.to_decimal(12)});
    }
    return out;
}

Outcome run_transfer(const Config& cfg, const RunContext& ctx) {
    const ApproxMatrix A = matrix(cfg);
    const ExactReal eps = real(cfg, "epsilon");
    const long ell = signed_long(cfg, "ell");
    const SamplingOptions s = sampling(cfg);
    const EnumerationOptions opts = enumeration(cfg);
    std::vector<std::vector<BigRational>> targets;
    if (has(cfg, "targets")) {
        targets = rational_vectors(cfg, "targets");
    } else {
        for (std::uint64_t i = 0; i < s.samples; ++i) {
            targets.push_back(sample_point(s, i, A.rows()));
        }
    }
    Json outcomes = Json::array();
    std::uint64_t successes = 0;
    std::uint64_t done = 0;
    if (ctx.resume) {
        done = ctx.resume->at("completed").get<std::uint64_t>();
        successes = ctx.resume->at("successes").get<std::uint64_t>();
        outcomes = ctx.resume->at("targets");
    }
    Json header;
    done = run_batches(targets.size(), done, cfg, ctx, [&](std::uint64_t first, std::uint64_t count) {
        const std::vector<std::vector<BigRational>> slice(targets.begin() + static_cast<std::ptrdiff_t>(first),
                                                          targets.begin() + static_cast<std::ptrdiff_t>(first + count));
        const CorollaryReport r = verify_corollary_3_3(A, eps, ell, slice, opts, resolve_threads(0));
        Json j = to_json(r);
        for (auto& t : j["targets"]) {
            outcomes.push_back(std::move(t));
        }
        successes += r.successes;
        j.erase("targets");
        j.erase("successes");
        j.erase("violation");
        header = std::move(j);
    });
    Outcome out{{{"matrix", to_json(A)}}, {{"index", "b", "witness_q", "lhs", "slack"}, {}}};
    if (header.is_null()) {
        header = to_json(transfer_bounds(return_threshold(eps, ell, A.rows(), A.cols()), BigInt(1) << ell, A.rows(),
                                         A.cols()));
    }
    out.result.update(header);
    out.result["total_targets"] = targets.size();
    out.result["successes"] = successes;
    out.violation = successes < done;
    out.result["violation"] = out.violation;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Json& t = outcomes[i];
        std::string b, q;
        for (const auto& c : t["b"]) {
            b += (b.empty() ? "" : " ") + c.get<std::string>();
        }
        if (!t["witness_q"].is_null()) {
            for (const auto& c : t["witness_q"]) {
                q += (q.empty() ? "" : " ") + (c.is_string() ? c.get<std::string>() : c.dump());
            }
        }
        out.table.rows.push_back({std::to_string(i), b, q, t["lhs_value"].is_null() ? "" : t["lhs_value"]["decimal"].get<std::string>(),
                                  t["slack"].dump()});
    }
    out.result["targets"] = outcomes;
    mark_partial(out, done, targets.size(), {{"successes", successes}, {"targets", outcomes}});
    return out;
}

Outcome run_measure(const Config& cfg, const RunContext& ctx, bool bad) {
    const ApproxMatrix A = matrix(cfg);
    const BigInt l = integer(cfg, "l");
    const std::vector<BigInt> uppers = integer_list(cfg, "uppers");
    const SamplingOptions s = sampling(cfg);
    const EnumerationOptions opts = enumeration(cfg);
    const ApproxFunction f = bad ? ApproxFunction::power_log(rational(cfg, "delta"),
                                                             BigRational(BigInt(static_cast<unsigned long>(A.cols())),
                                                                         BigInt(static_cast<unsigned long>(A.rows()))))
                                 : psi(cfg);
    std::uint64_t done = 0;
    std::vector<std::uint64_t> hits = resumed_hits(ctx, uppers.size(), done);
    done = run_batches(s.samples, done, cfg, ctx, [&](std::uint64_t first, std::uint64_t count) {
        SamplingOptions b = s;
        b.first = first;
        b.count = count;
        const auto es = bad ? measure_Bad_schedule(A, rational(cfg, "delta"), l, uppers, b, opts)
                            : measure_W_schedule(A, f, l, uppers, b, opts);
        for (std::size_t j = 0; j < es.size(); ++j) {
            hits[j] += es[j].hits;
        }
    });
    std::vector<MeasureEstimate> es;
    Json estimates = Json::array();
    for (std::size_t j = 0; j < uppers.size(); ++j) {
        es.push_back(make_estimate(hits[j], done, s.seed, Window{l, uppers[j]}));
        Json e = to_json(es.back());
        e["hausdorff_cantelli_sum"] = hausdorff_cantelli_sum(f, A.rows(), A.cols(), Window{l, uppers[j]});
        estimates.push_back(std::move(e));
    }
    Outcome out{{{"matrix", to_json(A)}, {"psi", to_json(f)}, {"estimates", std::move(estimates)}}, estimate_table(es)};
    mark_partial(out, done, s.samples, {{"hits", hits}});
    return out;
}

std::vector<std::vector<BigRational>> center_grid(std::size_t m) {
    const long g = m == 1 ? 8 : 4;
    std::vector<std::vector<BigRational>> out{{}};
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<BigRational>> next;
        for (const auto& prefix : out) {
            for (long k = 0; k < g; ++k) {
                auto p = prefix;
                p.push_back(BigRational(2 * k + 1, 2 * g));
                p.back().canonicalize();
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

Outcome run_coverage(const Config& cfg, const RunContext& ctx) {
    const ApproxMatrix A = matrix(cfg);
    const EnumerationOptions opts = enumeration(cfg);
    const SamplingOptions s = sampling(cfg);
    Outcome out{{{"matrix", to_json(A)}}, {{"ell", "window", "rho", "samples", "hits", "fraction", "ci_low", "ci_high", "sigma"}, {}}};
    BigRational C;
    if (text(cfg, "equid_constant") == "auto") {
        std::vector<std::uint64_t> ls;
        for (const BigInt& v : integer_list(cfg, "equid_l")) {
            ls.push_back(norm_bound(v));
        }
        const EquidConstantEstimate e =
            estimate_equid_constant(A, center_grid(A.rows()), rational(cfg, "equid_radius"), ls, opts);
        out.result["equid_estimate"] = to_json(e);
        C = e.recommended;
    } else {
        C = rational(cfg, "equid_constant");
    }
    const UbiquityParams p = ubiquity_params(A, real(cfg, "epsilon"), signed_long(cfg, "ell_max"), C, opts);
    const std::vector<BigRational> center = rational_vector(cfg, "center");
    const BigRational radius = rational(cfg, "radius");
    std::vector<std::size_t> idx;
    if (has(cfg, "levels")) {
        for (const BigInt& i : integer_list(cfg, "levels")) {
            idx.push_back(static_cast<std::size_t>(norm_bound(i)));
        }
    } else {
        for (std::size_t i = 0; i < p.levels.size(); ++i) {
            idx.push_back(i);
        }
    }
    std::uint64_t done = 0;
    std::vector<std::uint64_t> hits = resumed_hits(ctx, idx.size(), done);
    done = run_batches(s.samples, done, cfg, ctx, [&](std::uint64_t first, std::uint64_t count) {
        SamplingOptions b = s;
        b.first = first;
        b.count = count;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            hits[j] += coverage(A, p, center, radius, idx[j], b, opts).covered.hits;
        }
    });
    CoverageReport rep{center, radius, {}};
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const UbiquityLevel& lv = p.levels.at(idx[j]);
        rep.levels.push_back({lv.ell, lv.window, lv.u, lv.l, lv.rho, make_estimate(hits[j], done, s.seed, lv.window)});
        const MeasureEstimate& e = rep.levels.back().covered;
        out.table.rows.push_back({std::to_string(lv.ell), lv.window.to_string(), lv.rho.to_decimal(12),
                                  std::to_string(e.samples), std::to_string(e.hits), decimal(e.fraction, 12),
                                  decimal(e.ci_low, 12), decimal(e.ci_high, 12), num(e.sigma())});
    }
    out.result["params"] = to_json(p);
    out.result["coverage"] = to_json(rep);
    if (p.levels.size() >= 2) {
        out.result["u_regular"] = check_u_regular(p, pow2_fraction(-static_cast<long>(p.n), static_cast<unsigned>(p.m)));
    }
    mark_partial(out, done, s.samples, {{"hits", hits}});
    return out;
}

Outcome run_equidist(const Config& cfg, const RunContext&) {
    const ApproxMatrix A = matrix(cfg);
    const EnumerationOptions opts = enumeration(cfg);
    const std::vector<BigInt> c = integer_list(cfg, "c");
    const std::uint64_t N = unsigned64(cfg, "N");
    const WeylSumResult w = weyl_sum(A, c, N, opts);
    Outcome out{{{"matrix", to_json(A)}, {"weyl", to_json(w)}},
                {{"N", "real", "imag", "magnitude", "normalized", "error_radius", "counting_ratio"}, {}}};
    std::string ratio_text;
    if (has(cfg, "radius")) {
        const std::vector<BigRational> center = has(cfg, "center") ? rational_vector(cfg, "center")
                                                                   : std::vector<BigRational>(A.rows(), BigRational(0));
        const BigRational radius = rational(cfg, "radius");
        const BigRational ratio = counting_ratio(A, center, radius, N, opts);
        BigRational volume(1);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            volume *= 2 * radius;
        }
        out.result["counting"] = {{"center", vector_json(center)},
                                  {"radius", to_string(radius)},
                                  {"ratio", rational_json(ratio)},
                                  {"ball_volume", rational_json(volume)}};
        ratio_text = decimal(ratio, 12);
    }
    out.table.rows.push_back({std::to_string(N), num(w.real), num(w.imag), num(w.magnitude), num(w.normalized),
                              num(w.error_radius), ratio_text});
    return out;
}

Outcome run_series(const Config& cfg, const RunContext&) {
    const ApproxFunction f = psi(cfg);
    const BigRational s = rational(cfg, "s");
    const std::size_t n = unsigned64(cfg, "n");
    const SeriesVerdict v = classify_series(f, s, n, unsigned64(cfg, "horizon"));
    Outcome out{{{"psi", to_json(f)}, {"s", to_string(s)}, {"n", n}}, {{"series", "horizon", "partial_sum"}, {}}};
    out.result.update(to_json(v));
    for (const auto& p : v.partial_sums) {
        out.table.rows.push_back({"q", p.horizon.get_str(), num(p.value)});
    }
    if (has(cfg, "levels")) {
        std::vector<long> levels;
        for (const BigInt& l : integer_list(cfg, "levels")) {
            levels.push_back(l.get_si());
        }
        const long ell_max = has(cfg, "ell_max") ? signed_long(cfg, "ell_max") : levels.back();
        const SeriesVerdict lv = classify_return_series(f, s, n, levels, ell_max);
        out.result["level_series"] = to_json(lv);
        for (const auto& p : lv.partial_sums) {
            out.table.rows.push_back({"levels", p.horizon.get_str(), num(p.value)});
        }
    }
    return out;
}

Outcome run_counterpart(const Config& cfg, const RunContext&) {
    const ApproxMatrix A = matrix(cfg);
    const EnumerationOptions opts = enumeration(cfg);
    const std::size_t K = unsigned64(cfg, "K");
    BestApproxSequence best;
    if (A.rows() == 1 && A.cols() == 1) {
        best = best_approximations_from_cf(A(0, 0), K);
    } else {
        best = best_approximations(A, integer(cfg, "y_max"), opts);
        if (best.entries.size() > K) {
            best.entries.resize(K);
        }
    }
    const CounterpartReport r = gamma_sequence(best, A.rows(), A.cols());
    Outcome out{{{"matrix", to_json(A)}, {"best", to_json(best)}, {"counterpart", to_json(r)}},
                {{"k", "Y_k", "M_k", "M_k_decimal", "gamma_k", "gamma_k_decimal", "U_k", "U_k_decimal", "V_k",
                  "V_k_decimal"},
                 {}}};
    for (std::size_t i = 0; i < r.k.size(); ++i) {
        const BestApprox& e = best.entries[r.k[i] - 1];
        out.table.rows.push_back({std::to_string(r.k[i]), e.Y.get_str(), e.M.to_string(), e.M.to_decimal(12),
                                  r.gamma[i].to_string(), r.gamma[i].to_decimal(12), r.U[i].to_string(),
                                  r.U[i].to_decimal(12), r.V[i].to_string(), r.V[i].to_decimal(12)});
    }
    const bool claims = std::all_of(r.U_lt_V.begin(), r.U_lt_V.end(), [](bool b) { return b; }) &&
                        std::all_of(r.U_next_le_V.begin(), r.U_next_le_V.end(), [](bool b) { return b; });
    out.violation = !claims;
    if (has(cfg, "prop_alpha")) {
        const Window w{integer(cfg, "l"), integer(cfg, "u")};
        const std::vector<BigRational> b = rational_vector(cfg, "b");
        const Prop51Report p = verify_prop_5_1(A, b, rational(cfg, "prop_alpha"), best, r, w, opts);
        out.result["interval_check"] = to_json(p);
        out.result["interval_check"]["b"] = vector_json(b);
        out.result["interval_check"]["window"] = w.to_string();
        out.violation = out.violation || (p.precondition && p.violations > 0);
    }
    out.result["violation"] = out.violation;
    return out;
}

Outcome run_exponents(const Config& cfg, const RunContext&) {
    const ApproxMatrix A = matrix(cfg);
    std::optional<std::vector<BigRational>> b;
    if (has(cfg, "b")) {
        b = rational_vector(cfg, "b");
    }
    const std::vector<BigInt> xs = integer_list(cfg, "X");
    const ExponentEstimate e = estimate_exponents(A, b, xs, enumeration(cfg));
    Outcome out{{{"matrix", to_json(A)}}, {{"kind", "X", "best", "best_decimal", "exponent", "exact_hit"}, {}}};
    out.result.update(to_json(e));
    if (b) {
        out.result["b"] = vector_json(*b);
    }
    const auto add = [&](const char* kind, const std::vector<ExponentPoint>& ps) {
        for (const auto& p : ps) {
            out.table.rows.push_back({kind, p.X.get_str(), p.best ? p.best->to_string() : "",
                                      p.best ? p.best->to_decimal(12) : "", num(p.exponent), p.exact_hit ? "1" : "0"});
        }
    };
    add("inhomogeneous", e.inhomogeneous);
    add("homogeneous", e.homogeneous);
    return out;
}

} // namespace

Outcome run_command(const std::string& command, const Config& cfg, const RunContext& ctx) {
    static const std::map<std::string, std::function<Outcome(const Config&, const RunContext&)>> table = {
        {"return-seq", run_return_seq},
        {"best-approx", run_best_approx},
        {"transfer", run_transfer},
        {"measure-w", [](const Config& c, const RunContext& x) { return run_measure(c, x, false); }},
        {"measure-bad", [](const Config& c, const RunContext& x) { return run_measure(c, x, true); }},
        {"coverage", run_coverage},
        {"equidist", run_equidist},
        {"series", run_series},
        {"counterpart", run_counterpart},
        {"exponents", run_exponents},
    };
    const auto it = table.find(command);
    if (it == table.end()) {
        throw InvalidArgument("unknown command '" + command + "'");
    }
    return it->second(cfg, ctx);
}

} // namespace dioph::cli
