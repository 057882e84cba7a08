#pragma once

#include "dioph/analysis.hpp"
#include "dioph/equidist.hpp"
#include "dioph/lattice.hpp"
#include "dioph/limsup.hpp"
#include "dioph/transference.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace dioph {

using Json = nlohmann::ordered_json;

/// Reals are emitted as {"exact": literal, "decimal": 12 significant digits}.
Json real_json(const ExactReal& x);
Json real_json(const RootReal& x);
Json rational_json(const BigRational& x);
Json vector_json(std::span<const BigRational> v);
Json intvec_json(const IntVec& v);

Json to_json(const ApproxMatrix& A);
Json to_json(const ApproxFunction& psi);
Json to_json(const ReturnSequence& r);
Json to_json(const BadWitness& w);
Json to_json(const BestApproxSequence& s);
Json to_json(const ContinuedFraction& cf);
Json to_json(const TransferBounds& b);
Json to_json(const CorollaryReport& r);
Json to_json(const MeasureEstimate& e);
Json to_json(const UbiquityParams& p);
Json to_json(const CoverageReport& r);
Json to_json(const WeylSumResult& w);
Json to_json(const EquidConstantEstimate& e);
Json to_json(const SeriesVerdict& v);
Json to_json(const CounterpartReport& r);
Json to_json(const Prop51Report& r);
Json to_json(const ExponentEstimate& e);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hash of the canonical (sorted-key, compact) dump of a config object.
std::string config_hash(const nlohmann::json& config);

/// {"tool", "versions", "command", "config", "config_hash", "seed", "result"}.
Json envelope(std::string_view command, const nlohmann::json& config, std::uint64_t seed, Json result);

/// Library versions embedded in every report.
Json versions_json();

} // namespace dioph
