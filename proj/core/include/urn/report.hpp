#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "urn/bounds.hpp"
#include "urn/coupling.hpp"
#include "urn/exact.hpp"
#include "urn/increment.hpp"
#include "urn/monte_carlo.hpp"
#include "urn/pmf.hpp"
#include "urn/verify.hpp"

namespace urn {

using Json = nlohmann::ordered_json;

/// Library version string.
const char* version() noexcept;

/// Parses {"n": int, "urns": {"kind": "uniform", "m": int}} or
/// {"n": int, "urns": {"kind": "explicit", "p": [numbers]}}. Throws
/// DomainError on schema violations and anything build_model rejects.
UrnModel parse_model(const Json& doc);
UrnModel parse_model(const std::string& text);

Json to_json(const UrnModel& model);
Json to_json(const IntegerPmf& pmf);
Json to_json(const Moments& moments);
/// Timing fields are left out so that reports are reproducible.
Json to_json(const McSummary& summary);
Json to_json(const CouplingBatch& batch);
Json to_json(const DeltaEstimate& estimate);
Json to_json(const BoundReport& report);
Json to_json(const CheckReport& report);

/// value,probability
void write_pmf_csv(std::ostream& out, const IntegerPmf& pmf);
/// y,y_sb,increment,b_flag
void write_coupling_csv(std::ostream& out, std::span<const CouplingDraw> draws);

inline constexpr const char* kSweepCsvHeader =
    "n,m,alpha,mu,sigma,d_hat,d_radius,thm1_bound,lower_bound";

/// Shortest round-trip decimal form used in every CSV cell.
std::string format_double(double value);

}  // namespace urn
