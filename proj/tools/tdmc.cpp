// tdmc: module categories over twisted Drinfeld doubles of finite groups.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdmc/cohomology.hpp"
#include "tdmc/error.hpp"
#include "tdmc/group_spec.hpp"
#include "tdmc/modcat.hpp"
#include "tdmc/report.hpp"
#include "tdmc/verify.hpp"

using nlohmann::json;
using namespace tdmc;

namespace {

constexpr int kUsage = 2;
constexpr int kEngine = 1;

struct Options {
  std::string group;
  long long omega = 0;
  std::string format = "table";
  std::string subgroup;
  std::string psi;
  int degree = 3;
  long long modulus = 0;
  std::string golden;
};

std::vector<i64> parse_coords(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError, "bad psi coordinate '" + item + "'");
    }
  }
  return out;
}

EnumerationOptions enumeration_from_env() {
  EnumerationOptions e;
  if (const char* v = std::getenv("TDMC_MAX_ORDER")) {
    try {
      std::size_t used = 0;
      e.max_order = std::stoi(v, &used);
      if (used != std::string(v).size() || e.max_order < 1) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError, std::string("TDMC_MAX_ORDER must be a positive integer, got '") + v + "'");
    }
  }
  return e;
}

ResolvedGroup load_group(const std::string& arg) {
  try {
    return resolve_group_argument(arg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadGroupSpec) throw;
    throw Error(ErrorKind::BadGroupSpec, e.what());
  }
}

struct Session {
  ResolvedGroup group;
  OmegaBasis basis;
  i64 k;
  DoubleContext ctx;
};

Session open_session(const Options& o) {
  ResolvedGroup rg = load_group(o.group);
  OmegaBasis basis = omega_basis(rg.group);
  const i64 k = ((o.omega % basis.period) + basis.period) % basis.period;
  DoubleContext ctx = make_double_context(rg.group, basis.omega(k));
  return Session{std::move(rg), std::move(basis), k, std::move(ctx)};
}

void emit(const Options& o, const json& j, const std::string& table) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table;
}

int run_classify(const Options& o) {
  Session s = open_session(o);
  ClassifyOptions co;
  co.enumeration = enumeration_from_env();
  ClassificationReport r = classify_double(s.ctx, co);
  r.omega_k = s.k;
  const auto duals = dual_ranks(s.ctx, r);
  emit(o, classification_to_json(r, s.group.spec, &duals), classification_table(r, &duals));
  return 0;
}

int run_rank(const Options& o) {
  Session s = open_session(o);
  ClassifyOptions co;
  co.enumeration = enumeration_from_env();
  co.with_ranks = false;
  ClassificationReport r = classify_double(s.ctx, co);
  const SubgroupReport* cls = nullptr;
  std::string known;
  for (const auto& c : r.classes) {
    known += " " + c.label;
    if (c.label == o.subgroup) cls = &c;
  }
  if (!cls) throw Error(ErrorKind::UsageError, "unknown subgroup class '" + o.subgroup + "'; classes:" + known);
  if (!cls->admissible)
    throw Error(ErrorKind::Inadmissible, cls->label + " is not admissible for omega = " + std::to_string(s.k) + " omega0");
  std::vector<i64> coords = parse_coords(o.psi);
  if (coords.empty()) coords.assign(cls->h2.invariant_factors.size(), 0);
  const PairHPsi pair = make_pair(s.ctx.tilde, cls->representative, cls->psi_at(coords));
  const RankBreakdown b = module_rank_double(s.ctx, pair);
  const int dual = dual_rank(s.ctx, pair);
  json j = breakdown_to_json(b);
  j["group"] = s.group.spec;
  j["omega_k"] = s.k;
  j["class"] = cls->label;
  j["psi"] = coords;
  j["dual_rank"] = dual;
  std::ostringstream t;
  t << cls->label << " psi=" << format_coords(coords) << " omega=" << s.k << " omega0\n";
  t << "rep  orbit  |H^g|  m\n";
  for (const auto& term : b.terms)
    t << s.ctx.base.name(term.rep) << "  " << term.orbit_size << "  " << term.stabilizer.order() << "  " << term.m
      << "\n";
  t << "rank " << b.total_rank << "\ndual rank " << dual << "\n";
  emit(o, j, t.str());
  return 0;
}

int run_fiber_functors(const Options& o) {
  Session s = open_session(o);
  ClassifyOptions co;
  co.enumeration = enumeration_from_env();
  co.with_ranks = false;
  ClassificationReport r = classify_double(s.ctx, co);
  json list = json::array();
  std::ostringstream t;
  t << "fiber functors of D(G, " << s.k << " omega0): " << r.fiber_functors.size() << "\n";
  for (auto [ci, pi] : r.fiber_functors) {
    const auto& c = r.classes[static_cast<std::size_t>(ci)];
    const auto& p = c.pairs[static_cast<std::size_t>(pi)];
    list.push_back(json{{"class", c.label}, {"order", c.representative.order()}, {"psi", p.psi}, {"rank", 1}});
    t << "  " << c.label << " psi=" << format_coords(p.psi) << " |H|=" << c.representative.order() << "\n";
  }
  emit(o, json{{"group", s.group.spec}, {"omega_k", s.k}, {"fiber_functors", list}}, t.str());
  return 0;
}

int run_cohomology(const Options& o) {
  ResolvedGroup rg = load_group(o.group);
  const bool cstar = o.modulus == 0;
  const CohomologyGroup h = cstar ? cohomology_cstar(rg.group, o.degree) : cohomology_mod(rg.group, o.degree, o.modulus);
  emit(o, cohomology_to_json(h, rg.spec, cstar), cohomology_table(h, cstar));
  return 0;
}

int run_verify(const Options& o) {
  json golden;
  if (o.golden.empty()) {
    golden = embedded_golden();
  } else {
    std::ifstream in(o.golden);
    if (!in) throw Error(ErrorKind::UsageError, "cannot read " + o.golden);
    try {
      golden = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::UsageError, o.golden + ": " + e.what());
    }
  }
  const VerifyOutcome v = verify_paper(golden);
  std::cout << v.render();
  return v.passed() ? 0 : kEngine;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Module categories over twisted Drinfeld doubles D(G, omega)"};
  app.require_subcommand(1);
  Options o;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "builtin name, inline JSON spec, or @file.json")->required();
  };
  auto add_omega = [&](CLI::App* sub) {
    sub->add_option("--omega", o.omega, "omega = k * omega0, k reduced modulo the order of omega0");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* classify = app.add_subcommand("classify", "module categories M(H, psi) with ranks");
  add_group(classify);
  add_omega(classify);
  add_format(classify);

  auto* rank = app.add_subcommand("rank", "rank breakdown of one module category");
  add_group(rank);
  add_omega(rank);
  rank->add_option("--subgroup", o.subgroup, "subgroup class label, e.g. H7 or C3")->required();
  rank->add_option("--psi", o.psi, "comma-separated H^2 coordinates (default: all zero)");
  add_format(rank);

  auto* ff = app.add_subcommand("fiber-functors", "module categories of rank one");
  add_group(ff);
  add_omega(ff);
  add_format(ff);

  auto* coh = app.add_subcommand("cohomology", "H^n(G, C*) or H^n(G, mu_M)");
  add_group(coh);
  coh->add_option("--degree", o.degree, "degree")->check(CLI::Range(1, 3));
  coh->add_option("--modulus", o.modulus, "coefficients mu_M instead of C*")->check(CLI::PositiveNumber);
  add_format(coh);

  auto* verify = app.add_subcommand("verify-paper", "check the built-in S3 tables");
  verify->add_option("--golden", o.golden, "golden table file to use instead of the built-in one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*classify) return run_classify(o);
    if (*rank) return run_rank(o);
    if (*ff) return run_fiber_functors(o);
    if (*coh) return run_cohomology(o);
    if (*verify) return run_verify(o);
  } catch (const Error& e) {
    std::cerr << "tdmc: " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::UsageError || e.kind() == ErrorKind::BadGroupSpec ||
                       e.kind() == ErrorKind::UnknownBuiltin;
    return usage ? kUsage : kEngine;
  } catch (const std::exception& e) {
    std::cerr << "tdmc: " << e.what() << "\n";
    return kEngine;
  }
  return kUsage;
}
