#include "tdmc/report.hpp"

#include <iomanip>
#include <sstream>

#include "tdmc/error.hpp"
#include "tdmc/group_spec.hpp"

namespace tdmc {

using nlohmann::json;

std::string format_coords(const std::vector<i64>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

json cochain_to_json(const Cochain& c, const json& group_spec) {
  return json{{"group", group_spec},
              {"degree", c.degree()},
              {"modulus", c.modulus()},
              {"values", std::vector<i64>(c.values().begin(), c.values().end())}};
}

Cochain cochain_from_json(const json& j) {
  try {
    FiniteGroup g = group_from_spec(j.at("group"));
    return Cochain::from_values(g, j.at("degree").get<int>(), j.at("modulus").get<i64>(),
                                j.at("values").get<std::vector<i64>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadGroupSpec, std::string("malformed cochain: ") + e.what());
  }
}

json cohomology_to_json(const CohomologyGroup& h, const json& group_spec, bool cstar) {
  json gens = json::array();
  for (const auto& g : h.generators) gens.push_back(cochain_to_json(g, group_spec));
  return json{{"group", group_spec},
              {"degree", h.degree},
              {"coefficients", cstar ? "C*" : "mu_" + std::to_string(h.modulus)},
              {"modulus", h.modulus},
              {"invariant_factors", h.invariant_factors},
              {"order", h.size()},
              {"generators", gens}};
}

std::string cohomology_table(const CohomologyGroup& h, bool cstar) {
  std::ostringstream out;
  out << "H^" << h.degree << "(G, " << (cstar ? std::string("C*") : "mu_" + std::to_string(h.modulus)) << ") = ";
  if (h.invariant_factors.empty()) out << "0";
  for (std::size_t i = 0; i < h.invariant_factors.size(); ++i)
    out << (i ? " + " : "") << "Z/" << h.invariant_factors[i];
  out << "\norder " << h.size() << ", generators valued in Z/" << h.modulus << "\n";
  return out.str();
}

json breakdown_to_json(const RankBreakdown& r) {
  json terms = json::array();
  for (const auto& t : r.terms)
    terms.push_back(json{{"rep", t.rep}, {"orbit_size", t.orbit_size}, {"stab_order", t.stabilizer.order()}, {"m", t.m}});
  return json{{"rank", r.total_rank}, {"breakdown", terms}};
}

std::vector<std::vector<int>> dual_ranks(const DoubleContext& ctx, const ClassificationReport& r) {
  std::vector<std::vector<int>> out;
  for (const auto& c : r.classes) {
    std::vector<int> row;
    for (const auto& p : c.pairs) row.push_back(dual_rank(ctx, p.pair));
    out.push_back(std::move(row));
  }
  return out;
}

json classification_to_json(const ClassificationReport& r, const json& group_spec,
                            const std::vector<std::vector<int>>* duals) {
  json admissible = json::array();
  json inadmissible = json::array();
  for (std::size_t ci = 0; ci < r.classes.size(); ++ci) {
    const auto& c = r.classes[ci];
    if (!c.admissible) {
      inadmissible.push_back(c.label);
      continue;
    }
    json pairs = json::array();
    for (std::size_t pi = 0; pi < c.pairs.size(); ++pi) {
      const auto& p = c.pairs[pi];
      json jp{{"psi", p.psi}, {"orbit_count", p.orbit_size}};
      if (p.rank) {
        const json b = breakdown_to_json(*p.rank);
        jp["rank"] = b["rank"];
        jp["breakdown"] = b["breakdown"];
      }
      if (duals) jp["dual_rank"] = (*duals)[ci][pi];
      pairs.push_back(std::move(jp));
    }
    admissible.push_back(json{{"class", c.label},
                              {"order", c.representative.order()},
                              {"class_size", c.class_size},
                              {"elements", c.representative.elements()},
                              {"h2_cstar", c.h2.invariant_factors},
                              {"double_cosets", c.double_cosets},
                              {"pairs", pairs}});
  }
  json ff = json::array();
  for (auto [ci, pi] : r.fiber_functors) {
    const auto& c = r.classes[static_cast<std::size_t>(ci)];
    ff.push_back(json{{"class", c.label}, {"psi", c.pairs[static_cast<std::size_t>(pi)].psi}});
  }
  return json{{"group", group_spec},
              {"omega_k", r.omega_k},
              {"modulus", r.modulus},
              {"admissible", admissible},
              {"inadmissible", inadmissible},
              {"fiber_functors", ff},
              {"totals", {{"pairs", r.total_pairs()}, {"fiber_functors", r.fiber_functors.size()}}}};
}

std::string classification_table(const ClassificationReport& r, const std::vector<std::vector<int>>* duals) {
  std::ostringstream out;
  out << "omega = " << r.omega_k << " * omega0, modulus " << r.modulus << "\n";
  out << std::left << std::setw(7) << "class" << std::setw(6) << "|H|" << std::setw(10) << "H2(C*)" << std::setw(8)
      << "cosets" << std::setw(8) << "psi" << std::setw(7) << "orbit" << std::setw(6) << "rank";
  if (duals) out << "dual";
  out << "\n";
  for (std::size_t ci = 0; ci < r.classes.size(); ++ci) {
    const auto& c = r.classes[ci];
    if (!c.admissible) continue;
    std::string h2 = c.h2.invariant_factors.empty() ? "0" : "";
    for (std::size_t i = 0; i < c.h2.invariant_factors.size(); ++i)
      h2 += (i ? "+Z/" : "Z/") + std::to_string(c.h2.invariant_factors[i]);
    for (std::size_t pi = 0; pi < c.pairs.size(); ++pi) {
      const auto& p = c.pairs[pi];
      out << std::setw(7) << c.label << std::setw(6) << c.representative.order() << std::setw(10) << h2 << std::setw(8)
          << c.double_cosets << std::setw(8) << format_coords(p.psi) << std::setw(7) << p.orbit_size << std::setw(6)
          << (p.rank ? std::to_string(p.rank->total_rank) : "-");
      if (duals) out << (*duals)[ci][pi];
      out << "\n";
    }
  }
  std::string skipped;
  for (const auto& c : r.classes)
    if (!c.admissible) skipped += " " + c.label;
  if (!skipped.empty()) out << "inadmissible:" << skipped << "\n";
  out << "pairs: " << r.total_pairs() << "\nfiber functors: " << r.fiber_functors.size();
  for (auto [ci, pi] : r.fiber_functors)
    out << " " << r.classes[static_cast<std::size_t>(ci)].label
        << format_coords(r.classes[static_cast<std::size_t>(ci)].pairs[static_cast<std::size_t>(pi)].psi);
  out << "\n";
  return out.str();
}

}  // namespace tdmc
