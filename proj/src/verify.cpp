#include "tdmc/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "tdmc/cohomology.hpp"
#include "tdmc/error.hpp"
#include "tdmc/group_spec.hpp"
#include "tdmc/modcat.hpp"

namespace tdmc {

namespace detail {
extern const char* const kGoldenJson;
}

using nlohmann::json;

namespace {

template <typename T>
std::string show(const T& v) {
  return json(v).dump();
}

template <typename A, typename B>
void expect(VerifySection& s, const std::string& what, const A& expected, const B& actual) {
  ++s.checked;
  if (json(expected) != json(actual)) s.diffs.push_back(what + ": expected " + show(expected) + ", got " + show(actual));
}

bool is_zero(const std::vector<i64>& v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

const SubgroupReport* find_class(const ClassificationReport& r, const std::string& label) {
  for (const auto& c : r.classes)
    if (c.label == label) return &c;
  return nullptr;
}

}  // namespace

bool VerifyOutcome::passed() const {
  return std::all_of(sections.begin(), sections.end(), [](const VerifySection& s) { return s.ok(); });
}

std::string VerifyOutcome::render() const {
  std::ostringstream out;
  for (const auto& s : sections) {
    out << (s.ok() ? "PASS " : "FAIL ") << s.name << " (" << (s.checked - static_cast<int>(s.diffs.size())) << "/"
        << s.checked << ")\n";
    for (const auto& d : s.diffs) out << "  " << d << "\n";
  }
  out << (passed() ? "all checks passed" : "verification FAILED") << "\n";
  return out.str();
}

json embedded_golden() { return json::parse(detail::kGoldenJson); }

VerifyOutcome verify_paper(const json& golden) {
  VerifyOutcome out;
  try {
    const FiniteGroup g = builtin_group(golden.at("group").get<std::string>());
    const OmegaBasis basis = omega_basis(g);

    std::map<i64, std::future<ClassificationReport>> pending;
    std::set<i64> ks{0};
    for (const auto& a : golden.at("admissible")) ks.insert(a.at("k").get<i64>());
    for (const auto& f : golden.at("fiber_functors")) ks.insert(f.at("k").get<i64>());
    for (i64 k : ks)
      pending[k] = std::async(std::launch::async, [&g, &basis, k] {
        const DoubleContext ctx = make_double_context(g, basis.omega(k));
        ClassificationReport r = classify_double(ctx);
        r.omega_k = k;
        return r;
      });
    std::map<i64, ClassificationReport> reports;
    for (auto& [k, f] : pending) reports.emplace(k, f.get());
    const ClassificationReport& base = reports.at(0);

    VerifySection coh{"cohomology H^3(G, C*)", 0, {}};
    expect(coh, "H^3 invariant factors", golden.at("h3_cstar"), basis.h3.invariant_factors);
    if (golden.contains("h2_cstar_of_group"))
      expect(coh, "H^2 invariant factors", golden.at("h2_cstar_of_group"),
             cohomology_cstar(g, 2).invariant_factors);
    out.sections.push_back(std::move(coh));

    VerifySection subs{"subgroup classes of G x G", 0, {}};
    expect(subs, "number of classes", golden.at("subgroups").size(), base.classes.size());
    for (const auto& row : golden.at("subgroups")) {
      const std::string label = row.at("label");
      const SubgroupReport* c = find_class(base, label);
      if (!c) {
        ++subs.checked;
        subs.diffs.push_back(label + ": missing");
        continue;
      }
      expect(subs, label + " order", row.at("order"), c->representative.order());
      expect(subs, label + " H^2", row.at("h2"), c->h2.invariant_factors);
    }
    out.sections.push_back(std::move(subs));

    VerifySection ranks{"module ranks (omega = 0, untwisted psi)", 0, {}};
    for (const auto& [label, row] : golden.at("module_ranks").items()) {
      const SubgroupReport* c = find_class(base, label);
      if (!c || c->pairs.empty()) {
        ++ranks.checked;
        ranks.diffs.push_back(label + ": no untwisted pair");
        continue;
      }
      expect(ranks, label + " double cosets", row.at("double_cosets"), c->double_cosets);
      expect(ranks, label + " rank", row.at("rank"), c->pairs.front().rank->total_rank);
    }
    out.sections.push_back(std::move(ranks));

    VerifySection adm{"admissible classes and pair counts", 0, {}};
    for (const auto& row : golden.at("admissible")) {
      const i64 k = row.at("k");
      const ClassificationReport& r = reports.at(k);
      std::vector<std::string> labels;
      for (const auto& c : r.classes)
        if (c.admissible) labels.push_back(c.label);
      expect(adm, "k=" + std::to_string(k) + " admissible", row.at("classes"), labels);
      expect(adm, "k=" + std::to_string(k) + " pairs", row.at("pairs"), r.total_pairs());
      // ranks of admissible classes do not depend on k
      for (const auto& c : r.classes) {
        if (!c.admissible || k == 0) continue;
        const SubgroupReport* c0 = find_class(base, c.label);
        for (const auto& p : c.pairs)
          expect(adm, "k=" + std::to_string(k) + " " + c.label + " rank", c0->pairs.front().rank->total_rank,
                 p.rank->total_rank);
      }
    }
    out.sections.push_back(std::move(adm));

    VerifySection duals{"dual category ranks (omega = 0)", 0, {}};
    {
      const DoubleContext ctx = make_double_context(g, basis.omega(0));
      std::map<std::string, int> computed;
      for (const auto& c : base.classes)
        for (const auto& p : c.pairs) computed[c.label + (is_zero(p.psi) ? "" : "tw")] = dual_rank(ctx, p.pair);
      expect(duals, "number of pairs", golden.at("dual_ranks").size(), computed.size());
      for (const auto& [label, v] : golden.at("dual_ranks").items()) {
        const auto it = computed.find(label);
        if (it == computed.end()) {
          ++duals.checked;
          duals.diffs.push_back(label + ": missing");
          continue;
        }
        expect(duals, label, v, it->second);
      }
    }
    out.sections.push_back(std::move(duals));

    VerifySection ff{"fiber functors", 0, {}};
    for (const auto& row : golden.at("fiber_functors")) {
      const i64 k = row.at("k");
      const ClassificationReport& r = reports.at(k);
      std::vector<std::string> labels;
      for (auto [ci, pi] : r.fiber_functors) {
        const auto& c = r.classes[static_cast<std::size_t>(ci)];
        labels.push_back(c.label + (is_zero(c.pairs[static_cast<std::size_t>(pi)].psi) ? "" : "tw"));
      }
      expect(ff, "k=" + std::to_string(k), row.at("classes"), labels);
    }
    out.sections.push_back(std::move(ff));
  } catch (const json::exception& e) {
    out.sections.push_back(VerifySection{"golden data", 1, {std::string("malformed golden data: ") + e.what()}});
  }
  return out;
}

}  // namespace tdmc
