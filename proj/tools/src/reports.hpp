#pragma once

#include <string>

#include <json.hpp>

#include "dieudonne/harness.hpp"
#include "dieudonne/sslocus.hpp"

namespace dieudonne::reports {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

/// Every report carries a "headline" object with the mathematical results and, beside
/// it, the run parameters (precision, field degrees). Audits compare headlines only.
json classify_report(const DieudonneModule& M);
json endo_report(const DieudonneModule& M, bool with_table = true);
json minimal_report(const DieudonneModule& M);
json stratify_report(const StratumTable& table);
json harness_report(const ManinBoundReport& report);

/// Canonical Hermite form of a lattice: shift, pivots and exact digit entries.
json lattice_json(const Lattice& L);

/// CSV forms with fixed column order.
std::string classify_csv(const json& report);
std::string endo_csv(const json& report);
std::string minimal_csv(const json& report);

}  // namespace dieudonne::reports
