#pragma once

#include <string>

#include <json.hpp>

#include "tdmc/cohomology.hpp"
#include "tdmc/modcat.hpp"

namespace tdmc {

/// {"group": spec, "degree": n, "modulus": M, "values": [...]} (row-major,
/// first argument most significant).
nlohmann::json cochain_to_json(const Cochain& c, const nlohmann::json& group_spec);
Cochain cochain_from_json(const nlohmann::json& j);

nlohmann::json cohomology_to_json(const CohomologyGroup& h, const nlohmann::json& group_spec, bool cstar);
std::string cohomology_table(const CohomologyGroup& h, bool cstar);

/// Elements of a breakdown are reported by their index in G.
nlohmann::json breakdown_to_json(const RankBreakdown& r);

/// Report schema:
/// {"group", "omega_k", "modulus",
///  "admissible": [{"class", "order", "class_size", "h2_cstar", "double_cosets",
///                  "pairs": [{"psi", "orbit_count", "rank", "dual_rank",
///                             "breakdown": [{"rep", "orbit_size", "stab_order", "m"}]}]}],
///  "inadmissible": [labels],
///  "fiber_functors": [{"class", "psi"}],
///  "totals": {"pairs", "fiber_functors"}}
/// orbit_count is the size of the normalizer orbit of psi on the torsor.
/// dual_rank is filled when `duals` is non-null (one entry per pair, in order).
nlohmann::json classification_to_json(const ClassificationReport& r, const nlohmann::json& group_spec,
                                      const std::vector<std::vector<int>>* duals = nullptr);
std::string classification_table(const ClassificationReport& r, const std::vector<std::vector<int>>* duals = nullptr);

/// Dual ranks for every pair of a double classification.
std::vector<std::vector<int>> dual_ranks(const DoubleContext& ctx, const ClassificationReport& r);

std::string format_coords(const std::vector<i64>& v);

}  // namespace tdmc
