#include "tdmc/modcat.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>

#include "tdmc/error.hpp"
#include "tdmc/twisted_algebra.hpp"

namespace tdmc {

namespace {

Subgroup subgroup_from(const FiniteGroup& g, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  return Subgroup::from_elements(g, std::move(elements));
}

LocalTerm finish_term(Element rep, int orbit_size, Subgroup stab, FiniteGroup local, Cochain psi,
                      const char* what) {
  if (!is_cocycle(psi))
    throw Error(ErrorKind::FormulaNotClosed,
                std::string(what) + " at representative " + std::to_string(rep) + " is not a 2-cocycle");
  const int m = projective_irrep_count(TwistedAlgebra(local, psi));
  return LocalTerm{rep, orbit_size, std::move(stab), std::move(local), std::move(psi), m};
}

void check_pair(const Context& ctx, const PairHPsi& p) {
  if (!p.subgroup.parent().same_table(ctx.ambient))
    throw Error(ErrorKind::WrongAmbient, "pair lives on another ambient group");
  if (p.psi.modulus() != ctx.modulus()) throw Error(ErrorKind::ModulusMismatch, "pair uses another modulus");
}

// Union-find over torsor points.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

DoubleContext make_double_context(const FiniteGroup& g, const Cochain& omega, i64 modulus) {
  if (!omega.group().same_table(g)) throw Error(ErrorKind::WrongAmbient, "omega lives on another group");
  const i64 sq_order = static_cast<i64>(g.order()) * g.order();
  if (modulus == 0) modulus = sq_order * sq_order;
  if (modulus % sq_order != 0)
    throw Error(ErrorKind::ModulusMismatch, "session modulus must be a multiple of |G x G|");
  const Cochain w = omega.embedded(modulus);
  DirectSquare sq = direct_square_with_diagonal(g);
  Cochain tilde = build_tilde_omega(w, sq);
  FiniteGroup square = sq.square;
  return DoubleContext{g, std::move(sq), w, Context{std::move(square), std::move(tilde)}};
}

i64 PairHPsi::at(Element a, Element b) const {
  return psi({subgroup.local_index(a), subgroup.local_index(b)});
}

PairHPsi make_pair(const Context& ctx, const Subgroup& h, const Cochain& psi) {
  if (!h.parent().same_table(ctx.ambient)) throw Error(ErrorKind::WrongAmbient, "subgroup of another group");
  if (psi.degree() != 2) throw Error(ErrorKind::NotTrivializing, "psi must be a 2-cochain");
  if (psi.modulus() != ctx.modulus()) throw Error(ErrorKind::ModulusMismatch, "psi uses another modulus");
  if (psi.group().order() != h.order()) throw Error(ErrorKind::WrongAmbient, "psi lives on another group");
  const FiniteGroup local = psi.group();
  if (!(coboundary(psi) == restrict_to(ctx.omega, h, local)))
    throw Error(ErrorKind::NotTrivializing, "d psi differs from the restriction of omega");
  return PairHPsi{h, local, psi};
}

PairHPsi trivial_pair(const Context& ctx, const Subgroup& h) {
  const FiniteGroup local = h.as_group();
  return make_pair(ctx, h, Cochain(local, 2, ctx.modulus()));
}

LocalTerm psi_g_general(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2, Element g) {
  check_pair(ctx, p1);
  check_pair(ctx, p2);
  const FiniteGroup& G = ctx.ambient;
  G.check_element(g);
  const Subgroup stab = p1.subgroup.intersect(p2.subgroup.conjugate(g));
  const FiniteGroup local = stab.as_group();
  const Element gi = G.inv(g);
  const auto& els = stab.elements();
  const Cochain& w = ctx.omega;
  auto conj = [&](Element x) { return G.mul(G.mul(gi, x), g); };  // g^-1 x g
  Cochain psi = Cochain::from_function(local, 2, ctx.modulus(), [&](std::span<const Element> a) {
    const Element h = els[a[0]];
    const Element hp = els[a[1]];
    const Element hpi = conj(G.inv(hp));
    const Element hi = conj(G.inv(h));
    return p1.at(h, hp) + p2.at(hpi, hi) - w({G.mul(G.mul(h, hp), g), hpi, hi}) + w({h, hp, g}) +
           w({h, G.mul(hp, g), hpi});
  });
  return finish_term(g, 0, stab, local, std::move(psi), "bimodule pairing cocycle");
}

LocalTerm psi_g_double(const DoubleContext& ctx, const PairHPsi& pair, Element g) {
  check_pair(ctx.tilde, pair);
  const FiniteGroup& G = ctx.base;
  G.check_element(g);
  const Element gi = G.inv(g);
  auto conj = [&](Element x) { return G.mul(G.mul(gi, x), g); };  // g^-1 x g
  std::vector<Element> members;
  for (Element h = 0; h < G.order(); ++h)
    if (pair.subgroup.contains(ctx.square.pair(h, conj(h)))) members.push_back(h);
  const Subgroup stab = subgroup_from(G, std::move(members));
  const FiniteGroup local = stab.as_group();
  const auto& els = stab.elements();
  const Cochain& w = ctx.omega;
  Cochain psi = Cochain::from_function(local, 2, ctx.modulus(), [&](std::span<const Element> a) {
    const Element h = els[a[0]];
    const Element hp = els[a[1]];
    const Element hi = G.inv(h);
    const Element hpi = G.inv(hp);
    const i64 lifted = pair.at(ctx.square.pair(h, conj(h)), ctx.square.pair(hp, conj(hp)));
    return -lifted + w({gi, hpi, hi}) + w({h, hp, hpi}) + w({conj(hp), G.mul(gi, hpi), hi}) -
           w({G.mul(h, hp), hpi, hi}) - w({conj(h), conj(hp), G.mul(G.mul(gi, hpi), hi)});
  });
  return finish_term(g, 0, stab, local, std::move(psi), "stabilizer cocycle");
}

RankBreakdown bimodule_rank(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2,
                            const std::vector<Element>* reps) {
  const auto cosets = double_cosets(p1.subgroup, p2.subgroup);
  if (reps && reps->size() != cosets.size())
    throw Error(ErrorKind::UsageError, "expected one representative per double coset");
  RankBreakdown out;
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    Element g = cosets[i].front();
    if (reps) {
      g = (*reps)[i];
      if (!std::binary_search(cosets[i].begin(), cosets[i].end(), g))
        throw Error(ErrorKind::UsageError, "representative outside its double coset");
    }
    LocalTerm t = psi_g_general(ctx, p1, p2, g);
    t.orbit_size = static_cast<int>(cosets[i].size());
    out.total_rank += t.m;
    out.terms.push_back(std::move(t));
  }
  return out;
}

RankBreakdown module_rank_double(const DoubleContext& ctx, const PairHPsi& pair, const std::vector<Element>* reps) {
  const OrbitDecomposition orbits = orbit_decomposition(ctx.square, pair.subgroup);
  if (reps && reps->size() != orbits.orbits.size())
    throw Error(ErrorKind::UsageError, "expected one representative per orbit");
  RankBreakdown out;
  for (std::size_t i = 0; i < orbits.orbits.size(); ++i) {
    const auto& orbit = orbits.orbits[i];
    Element g = orbits.representatives[i];
    if (reps) {
      g = (*reps)[i];
      if (std::find(orbit.begin(), orbit.end(), g) == orbit.end())
        throw Error(ErrorKind::UsageError, "representative outside its orbit");
    }
    LocalTerm t = psi_g_double(ctx, pair, g);
    t.orbit_size = static_cast<int>(orbit.size());
    out.total_rank += t.m;
    out.terms.push_back(std::move(t));
  }
  return out;
}

int dual_rank(const DoubleContext& ctx, const PairHPsi& pair) {
  return bimodule_rank(ctx.tilde, pair, pair).total_rank;
}

int oracle_simple_bimodules(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2, Element g) {
  check_pair(ctx, p1);
  check_pair(ctx, p2);
  const FiniteGroup& G = ctx.ambient;
  G.check_element(g);
  const Element gi = G.inv(g);
  std::vector<Element> members;
  for (Element h = 0; h < G.order(); ++h) {
    if (!p1.subgroup.contains(h)) continue;
    const Element k = G.mul(G.mul(gi, G.inv(h)), g);  // h g k = g
    if (p2.subgroup.contains(k)) members.push_back(h);
  }
  const Subgroup stab = subgroup_from(G, std::move(members));
  if (stab.order() > 64) throw Error(ErrorKind::SizeBound, "oracle is limited to stabilizers of order 64");
  const FiniteGroup local = stab.as_group();
  const auto& els = stab.elements();
  const Cochain& w = ctx.omega;
  auto partner = [&](Element h) { return G.mul(G.mul(gi, G.inv(h)), g); };
  // j_h o j_h' = i1_{h,g} i2_{hg,k} i1_{h',g} i2_{h'g,k'}.
  //  commutation: i2_{hg,k} i1_{h',g} = -w(h',hg,k) + i1_{h',hg} i2_{h'hg,k}
  //  left module: i1_{h,g} i1_{h',hg}  = -w(h',h,g) - psi1(h',h) + i1_{h'h,g}
  //  right module: i2_{h'hg,k} i2_{h'g,k'} = w(h'hg,k,k') - psi2(k,k') + i2_{h'hg,kk'}
  // so j_h o j_h' = s(h,h') j_{h'h}; the opposite algebra has e_x e_y = s(y,x) e_xy.
  auto s = [&](Element h, Element hp) {
    const Element k = partner(h);
    const Element kp = partner(hp);
    const Element hg = G.mul(h, g);
    const Element hphg = G.mul(hp, hg);
    return -w({hp, hg, k}) - w({hp, h, g}) - p1.at(hp, h) + w({hphg, k, kp}) - p2.at(k, kp);
  };
  Cochain sigma = Cochain::from_function(local, 2, ctx.modulus(), [&](std::span<const Element> a) {
    return s(els[a[1]], els[a[0]]);
  });
  return center_dimension_oracle(TwistedAlgebra(local, std::move(sigma)));
}

Cochain transport(const Context& ctx, const PairHPsi& pair, Element n) {
  check_pair(ctx, pair);
  const FiniteGroup& G = ctx.ambient;
  G.check_element(n);
  const Subgroup& h = pair.subgroup;
  if (!(h.conjugate(n) == h)) throw Error(ErrorKind::NotASubgroup, "element does not normalize the subgroup");
  const Element ni = G.inv(n);
  auto c = [&](Element x) { return G.mul(G.mul(ni, x), n); };  // n^-1 x n
  const auto& els = h.elements();
  const Cochain& w = ctx.omega;
  const Cochain target = restrict_to(w, h, pair.local);
  const Cochain moved = Cochain::from_function(pair.local, 2, ctx.modulus(), [&](std::span<const Element> a) {
    return pair.at(c(els[a[0]]), c(els[a[1]]));
  });
  const Cochain correction = Cochain::from_function(pair.local, 2, ctx.modulus(), [&](std::span<const Element> a) {
    const Element x = els[a[0]];
    const Element y = els[a[1]];
    return w({x, y, n}) - w({x, n, c(y)}) + w({n, c(x), c(y)});
  });
  Cochain out = moved + correction;
  if (!(coboundary(out) == target))
    throw Error(ErrorKind::FormulaNotClosed, "transported psi does not trivialize omega on the conjugated subgroup");
  return out;
}

Cochain SubgroupReport::psi_at(const std::vector<i64>& coords) const {
  if (!base_psi) throw Error(ErrorKind::Inadmissible, label + " is not admissible");
  if (coords.size() != h2.invariant_factors.size())
    throw Error(ErrorKind::UsageError, label + " expects " + std::to_string(h2.invariant_factors.size()) +
                                           " psi coordinates");
  return h2.is_trivial() ? *base_psi : *base_psi + h2.element(coords);
}

int ClassificationReport::total_pairs() const {
  int t = 0;
  for (const auto& c : classes) t += static_cast<int>(c.pairs.size());
  return t;
}

ClassificationReport classify_pairs(const Context& ctx, const ClassifyOptions& options) {
  ClassificationReport report;
  report.modulus = ctx.modulus();
  if (!is_cocycle(ctx.omega)) throw Error(ErrorKind::NotACocycle, "omega is not a 3-cocycle");
  const auto classes = subgroups_up_to_conjugacy(ctx.ambient, options.enumeration);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& cls = classes[ci];
    const Subgroup& h = cls.representative;
    const FiniteGroup local = h.as_group();
    SubgroupReport sr{"C" + std::to_string(ci + 1), h, cls.class_size, false, CohomologyGroup{}, std::nullopt, 0, {}};
    const auto psi0 = solve_trivialization(ctx.omega, h, local);
    if (!psi0) {
      report.classes.push_back(std::move(sr));
      continue;
    }
    sr.admissible = true;
    sr.h2 = cohomology_cstar(local, 2, ctx.modulus());
    sr.base_psi = *psi0;
    const auto points = sr.h2.all_coordinates();
    auto point_psi = [&](const std::vector<i64>& coords) { return sr.psi_at(coords); };
    Components comp(static_cast<int>(points.size()));
    if (points.size() > 1) {
      std::map<std::vector<i64>, int> index;
      for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);
      const auto gens = cls.normalizer.generators();
      for (std::size_t i = 0; i < points.size(); ++i) {
        const PairHPsi p{h, local, point_psi(points[i])};
        for (Element n : gens) {
          const Cochain moved = transport(ctx, p, n);
          comp.join(static_cast<int>(i), index.at(sr.h2.lookup(moved - *psi0)));
        }
      }
    }
    std::map<int, std::vector<int>> orbits;
    for (std::size_t i = 0; i < points.size(); ++i) orbits[comp.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    for (const auto& [root, members] : orbits) {
      // the root is the least index, so its coordinates are the least in the orbit
      sr.pairs.push_back(PairClass{points[static_cast<std::size_t>(root)], static_cast<int>(members.size()),
                                   make_pair(ctx, h, point_psi(points[static_cast<std::size_t>(root)])),
                                   std::nullopt});
    }
    std::sort(sr.pairs.begin(), sr.pairs.end(), [](const PairClass& a, const PairClass& b) { return a.psi < b.psi; });
    report.classes.push_back(std::move(sr));
  }
  return report;
}

std::optional<std::string> s3_label(const DoubleContext& ctx, const Subgroup& h) {
  if (ctx.base.order() != 6 || ctx.base.is_abelian()) return std::nullopt;
  const auto& sq = ctx.square;
  if (!h.parent().same_table(sq.square)) return std::nullopt;
  std::vector<bool> first(6, false), second(6, false);
  int left = 0, right = 0;
  for (Element x : h.elements()) {
    first[sq.first(x)] = true;
    second[sq.second(x)] = true;
    if (sq.second(x) == 0) ++left;
    if (sq.first(x) == 0) ++right;
  }
  const int a = static_cast<int>(std::count(first.begin(), first.end(), true));
  const int b = static_cast<int>(std::count(second.begin(), second.end(), true));
  static const std::map<std::array<int, 5>, std::string> table = {
      {{1, 1, 1, 1, 1}, "H1"},    {{2, 2, 1, 2, 1}, "H2"},    {{2, 1, 2, 1, 2}, "H3"},
      {{2, 2, 2, 1, 1}, "H4"},    {{3, 3, 1, 3, 1}, "H5"},    {{3, 1, 3, 1, 3}, "H6"},
      {{3, 3, 3, 1, 1}, "H7"},    {{4, 2, 2, 2, 2}, "H8"},    {{6, 6, 1, 6, 1}, "H9"},
      {{6, 1, 6, 1, 6}, "H10"},   {{6, 6, 6, 1, 1}, "H11"},   {{6, 2, 3, 2, 3}, "H12"},
      {{6, 3, 2, 3, 2}, "H13"},   {{9, 3, 3, 3, 3}, "H14"},   {{12, 6, 2, 6, 2}, "H15"},
      {{12, 2, 6, 2, 6}, "H16"},  {{18, 6, 3, 6, 3}, "H17"},  {{18, 3, 6, 3, 6}, "H18"},
      {{18, 6, 6, 3, 3}, "H19"},  {{36, 6, 6, 6, 6}, "H20"},  {{6, 6, 2, 3, 1}, "H21"},
      {{6, 2, 6, 1, 3}, "H22"},
  };
  const auto it = table.find({h.order(), a, b, left, right});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

int label_index(const std::string& label) { return std::stoi(label.substr(1)); }

}  // namespace

ClassificationReport classify_double(const DoubleContext& ctx, const ClassifyOptions& options) {
  ClassificationReport report = classify_pairs(ctx.tilde, options);
  std::vector<std::string> labels;
  bool all_labelled = true;
  for (const auto& c : report.classes) {
    auto l = s3_label(ctx, c.representative);
    if (!l) {
      all_labelled = false;
      break;
    }
    labels.push_back(*l);
  }
  if (all_labelled && !report.classes.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) report.classes[i].label = labels[i];
    std::stable_sort(report.classes.begin(), report.classes.end(), [](const SubgroupReport& a, const SubgroupReport& b) {
      return label_index(a.label) < label_index(b.label);
    });
  }
  for (std::size_t ci = 0; ci < report.classes.size(); ++ci) {
    auto& c = report.classes[ci];
    const OrbitDecomposition orbits = orbit_decomposition(ctx.square, c.representative);
    c.double_cosets = static_cast<int>(orbits.orbits.size());
    const Subgroup meet = c.representative.intersect(ctx.square.diagonal);
    for (std::size_t pi = 0; pi < c.pairs.size(); ++pi) {
      auto& p = c.pairs[pi];
      if (options.with_ranks) p.rank = module_rank_double(ctx, p.pair);
      if (c.double_cosets != 1) continue;
      // psi - 0 restricted to H cap Delta(G) must be nondegenerate
      const FiniteGroup mlocal = meet.as_group();
      const Cochain r = Cochain::from_function(mlocal, 2, ctx.modulus(), [&](std::span<const Element> a) {
        return p.pair.at(meet.elements()[a[0]], meet.elements()[a[1]]);
      });
      if (!is_nondegenerate(TwistedAlgebra(mlocal, r))) continue;
      const int rank = p.rank ? p.rank->total_rank : module_rank_double(ctx, p.pair).total_rank;
      if (rank != 1)
        throw Error(ErrorKind::FormulaNotClosed,
                    "fiber functor candidate " + c.label + " has module rank " + std::to_string(rank));
      report.fiber_functors.emplace_back(static_cast<int>(ci), static_cast<int>(pi));
    }
  }
  return report;
}

std::vector<PairHPsi> fiber_functors(const Context& ctx, const PairHPsi& base, const EnumerationOptions& options) {
  check_pair(ctx, base);
  ClassifyOptions co;
  co.enumeration = options;
  co.with_ranks = false;
  const ClassificationReport report = classify_pairs(ctx, co);
  std::vector<PairHPsi> out;
  for (const auto& c : report.classes) {
    if (double_cosets(base.subgroup, c.representative).size() != 1) continue;
    const Subgroup meet = base.subgroup.intersect(c.representative);
    const FiniteGroup mlocal = meet.as_group();
    for (const auto& p : c.pairs) {
      const Cochain r = Cochain::from_function(mlocal, 2, ctx.modulus(), [&](std::span<const Element> a) {
        const Element x = meet.elements()[a[0]];
        const Element y = meet.elements()[a[1]];
        return base.at(x, y) - p.pair.at(x, y);
      });
      if (!is_nondegenerate(TwistedAlgebra(mlocal, r))) continue;
      const int rank = bimodule_rank(ctx, base, p.pair).total_rank;
      if (rank != 1)
        throw Error(ErrorKind::FormulaNotClosed, "fiber functor candidate " + c.label + " has rank " + std::to_string(rank));
      out.push_back(p.pair);
    }
  }
  return out;
}

}  // namespace tdmc
