#include "tdmc/group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tdmc/error.hpp"

namespace tdmc {

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "g" + std::to_string(i);
  if (n > 0) names[0] = "e";
  return names;
}

// Closure of `seed` (must contain 0) under right multiplication by gens.
std::vector<Element> close_under(const FiniteGroup& g, std::vector<char>& in, std::vector<Element> seed,
                                 std::span<const Element> gens) {
  std::deque<Element> queue(seed.begin(), seed.end());
  for (Element x : seed) in[x] = 1;
  std::vector<Element> out = std::move(seed);
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (Element s : gens) {
      Element y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty Cayley table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::BadGroupSpec, "Cayley table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::NotAGroup, "Cayley table entry out of range");
  }
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw Error(ErrorKind::BadGroupSpec, "element name count does not match order");

  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool unit = true;
    for (int x = 0; x < n && unit; ++x) unit = table[i][x] == x && table[x][i] == x;
    if (unit) e = i;
  }
  if (e < 0) throw Error(ErrorKind::NotAGroup, "no two-sided identity");

  // relabel so the identity sits at index 0
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[e]);

  auto data = std::make_shared<Data>();
  data->order = n;
  data->table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) data->table[static_cast<std::size_t>(perm[a]) * n + perm[b]] = perm[table[a][b]];

  auto at = [&](int a, int b) { return data->table[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = at(a, b);
      for (int c = 0; c < n; ++c)
        if (at(ab, c) != at(a, at(b, c)))
          throw Error(ErrorKind::NonAssociative, "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                     std::to_string(c) + ")");
    }

  data->inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (at(a, b) == 0 && at(b, a) == 0) {
        data->inverse[a] = b;
        break;
      }
    if (data->inverse[a] < 0) throw Error(ErrorKind::NotAGroup, "element " + std::to_string(a) + " has no inverse");
  }

  if (names.empty()) {
    data->names = default_names(n);
  } else {
    data->names.resize(n);
    for (int a = 0; a < n; ++a) data->names[perm[a]] = names[a];
  }
  return FiniteGroup(std::move(data));
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& generators) {
  if (degree <= 0) throw Error(ErrorKind::BadGroupSpec, "permutation degree must be positive");
  for (const auto& gen : generators) {
    if (static_cast<int>(gen.size()) != degree)
      throw Error(ErrorKind::BadGroupSpec, "generator length differs from degree");
    std::vector<char> seen(degree, 0);
    for (int v : gen) {
      if (v < 0 || v >= degree || seen[v]) throw Error(ErrorKind::BadGroupSpec, "generator is not a permutation");
      seen[v] = 1;
    }
  }
  using Perm = std::vector<int>;
  auto compose = [degree](const Perm& x, const Perm& y) {
    Perm r(degree);
    for (int i = 0; i < degree; ++i) r[i] = x[y[i]];
    return r;
  };

  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elements{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& s : generators) {
      Perm y = compose(elements[k], s);
      if (!index.contains(y)) {
        index.emplace(y, static_cast<int>(elements.size()));
        elements.push_back(std::move(y));
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));

  // cycle notation with one-based points
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    std::string s;
    std::vector<char> done(degree, 0);
    for (int i = 0; i < degree; ++i) {
      if (done[i] || elements[a][i] == i) continue;
      s += "(";
      int j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = 1;
        if (!first) s += " ";
        s += std::to_string(j + 1);
        first = false;
        j = elements[a][j];
      }
      s += ")";
    }
    names[a] = s.empty() ? "e" : s;
  }
  return from_table(table, std::move(names));
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw Error(ErrorKind::BadGroupSpec, "cyclic group order must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    names[a] = a == 0 ? "e" : (a == 1 ? "x" : "x^" + std::to_string(a));
  }
  return from_table(table, std::move(names));
}

int FiniteGroup::element_order(Element x) const {
  int k = 1;
  for (Element y = x; y != 0; y = mul(y, x)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  return data_ == other.data_ || data_->table == other.data_->table;
}

void FiniteGroup::check_element(Element x) const {
  if (x < 0 || x >= order())
    throw Error(ErrorKind::ElementOutOfRange, "element " + std::to_string(x) + " not in group of order " +
                                                  std::to_string(order()));
}

bool satisfies_group_laws(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0) return false;
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
    }
  }
  return true;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const std::vector<Element> gens = Subgroup::whole(a).generators();
  const int n = a.order();
  std::vector<Element> images(gens.size());

  auto try_images = [&]() {
    // extend along breadth-first words in the generators
    std::vector<int> map(n, -1);
    map[0] = 0;
    std::deque<Element> queue{0};
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element y = a.mul(x, gens[i]);
        Element fy = b.mul(map[x], images[i]);
        if (map[y] < 0) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
      if (hit[map[x]]) return false;
      hit[map[x]] = 1;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == gens.size()) return try_images();
    for (Element y = 0; y < n; ++y) {
      if (b.element_order(y) != a.element_order(gens[i])) continue;
      images[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  return search(0);
}

// ------------------------------------------------------------------- Subgroup

Subgroup Subgroup::make(const FiniteGroup& parent, std::vector<Element> sorted) {
  auto data = std::make_shared<Data>(Data{parent, std::move(sorted), std::vector<int>(parent.order(), -1)});
  for (std::size_t i = 0; i < data->elements.size(); ++i) data->local[data->elements[i]] = static_cast<int>(i);
  return Subgroup(std::move(data));
}

Subgroup Subgroup::from_elements(const FiniteGroup& parent, std::vector<Element> elements) {
  for (Element x : elements) parent.check_element(x);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != 0)
    throw Error(ErrorKind::NotASubgroup, "subset does not contain the identity");
  std::vector<char> in(parent.order(), 0);
  for (Element x : elements) in[x] = 1;
  for (Element x : elements) {
    if (!in[parent.inv(x)]) throw Error(ErrorKind::NotASubgroup, "subset not closed under inverses");
    for (Element y : elements)
      if (!in[parent.mul(x, y)]) throw Error(ErrorKind::NotASubgroup, "subset not closed under multiplication");
  }
  if (parent.order() % static_cast<int>(elements.size()) != 0)
    throw Error(ErrorKind::NotASubgroup, "subset order does not divide group order");
  return make(parent, std::move(elements));
}

Subgroup Subgroup::generated_by(const FiniteGroup& parent, std::span<const Element> generators) {
  for (Element x : generators) parent.check_element(x);
  std::vector<char> in(parent.order(), 0);
  std::vector<Element> els = close_under(parent, in, {0}, generators);
  std::sort(els.begin(), els.end());
  return make(parent, std::move(els));
}

Subgroup Subgroup::whole(const FiniteGroup& parent) {
  std::vector<Element> els(parent.order());
  std::iota(els.begin(), els.end(), 0);
  return make(parent, std::move(els));
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) { return make(parent, {0}); }

FiniteGroup Subgroup::as_group() const {
  const auto& els = elements();
  const int n = order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    names[i] = parent().name(els[i]);
    for (int j = 0; j < n; ++j) table[i][j] = local_index(parent().mul(els[i], els[j]));
  }
  return FiniteGroup::from_table(table, std::move(names));
}

Subgroup Subgroup::conjugate(Element n) const {
  parent().check_element(n);
  std::vector<Element> els;
  els.reserve(elements().size());
  for (Element x : elements()) els.push_back(parent().conjugate(x, n));
  std::sort(els.begin(), els.end());
  return make(parent(), std::move(els));
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  std::vector<Element> els;
  for (Element x : elements())
    if (other.contains(x)) els.push_back(x);
  return make(parent(), std::move(els));
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return std::all_of(elements().begin(), elements().end(), [&](Element x) { return other.contains(x); });
}

std::vector<Element> Subgroup::generators() const {
  std::vector<Element> gens;
  std::vector<char> in(parent().order(), 0);
  in[0] = 1;
  for (Element x : elements()) {
    if (in[x]) continue;
    gens.push_back(x);
    std::fill(in.begin(), in.end(), 0);
    close_under(parent(), in, {0}, gens);
  }
  return gens;
}

// -------------------------------------------------------------- direct square

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order();
  const int nb = b.order();
  const int n = na * nb;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int x = 0; x < n; ++x) {
    names[x] = "(" + a.name(x / nb) + "," + b.name(x % nb) + ")";
    for (int y = 0; y < n; ++y) table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup::from_table(table, std::move(names));
}

DirectSquare direct_square_with_diagonal(const FiniteGroup& g) {
  FiniteGroup sq = direct_product(g, g);
  const int n = g.order();
  std::vector<Element> diag;
  std::vector<Element> p1(static_cast<std::size_t>(n) * n), p2(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    diag.push_back(a * n + a);
    for (int b = 0; b < n; ++b) {
      p1[a * n + b] = a;
      p2[a * n + b] = b;
    }
  }
  // projections are homomorphisms by construction; checked exhaustively at desk scale
  if (sq.order() <= 400) {
    for (int x = 0; x < sq.order(); ++x)
      for (int y = 0; y < sq.order(); ++y) {
        const int xy = sq.mul(x, y);
        if (p1[xy] != g.mul(p1[x], p1[y]) || p2[xy] != g.mul(p2[x], p2[y]))
          throw Error(ErrorKind::NotAGroup, "projection is not a homomorphism");
      }
  }
  Subgroup diagonal = Subgroup::from_elements(sq, std::move(diag));
  return DirectSquare{g, sq, diagonal, std::move(p1), std::move(p2)};
}

Subgroup DirectSquare::left_factor(const Subgroup& k) const {
  std::vector<Element> els;
  for (Element a : k.elements()) els.push_back(pair(a, 0));
  return Subgroup::from_elements(square, std::move(els));
}

Subgroup DirectSquare::right_factor(const Subgroup& k) const {
  std::vector<Element> els;
  for (Element b : k.elements()) els.push_back(pair(0, b));
  return Subgroup::from_elements(square, std::move(els));
}

Subgroup DirectSquare::diagonal_of(const Subgroup& k) const {
  std::vector<Element> els;
  for (Element a : k.elements()) els.push_back(pair(a, a));
  return Subgroup::from_elements(square, std::move(els));
}

// ------------------------------------------------------- classes and subgroups

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<std::vector<Element>> classes;
  std::vector<char> seen(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Element> cls;
    for (Element n = 0; n < g.order(); ++n) {
      Element y = g.conjugate(x, n);
      if (!seen[y]) {
        seen[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup centralizer(const FiniteGroup& g, Element x) {
  g.check_element(x);
  std::vector<Element> els;
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) els.push_back(y);
  return Subgroup::from_elements(g, std::move(els));
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  if (!h.parent().same_table(g)) throw Error(ErrorKind::NotASubgroup, "subgroup of a different group");
  std::vector<Element> els;
  for (Element n = 0; n < g.order(); ++n) {
    bool ok = true;
    for (Element x : h.elements())
      if (!h.contains(g.conjugate(x, n))) {
        ok = false;
        break;
      }
    if (ok) els.push_back(n);
  }
  return Subgroup::from_elements(g, std::move(els));
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, const EnumerationOptions& options) {
  if (g.order() > options.max_order)
    throw Error(ErrorKind::SizeBound, "group order " + std::to_string(g.order()) + " exceeds bound " +
                                          std::to_string(options.max_order));
  std::map<std::vector<Element>, std::vector<Element>> found;  // element set -> generators
  std::vector<Element> cyclic_gens;
  for (Element x = 0; x < g.order(); ++x) {
    std::array<Element, 1> gen{x};
    Subgroup c = Subgroup::generated_by(g, gen);
    if (found.emplace(c.elements(), std::vector<Element>{x}).second) cyclic_gens.push_back(x);
  }

  // joins with cyclic subgroups until nothing new appears
  std::vector<std::vector<Element>> queue;
  for (const auto& [els, gens] : found) queue.push_back(els);
  std::vector<char> in(g.order(), 0);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::vector<Element> base = queue[k];
    const std::vector<Element> base_gens = found.at(base);
    std::vector<char> member(g.order(), 0);
    for (Element x : base) member[x] = 1;
    for (Element c : cyclic_gens) {
      if (member[c]) continue;
      std::vector<Element> gens = base_gens;
      gens.push_back(c);
      std::fill(in.begin(), in.end(), 0);
      std::vector<Element> els = close_under(g, in, base, gens);
      std::sort(els.begin(), els.end());
      if (!found.contains(els)) {
        found.emplace(els, gens);
        queue.push_back(std::move(els));
      }
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& [els, gens] : found) out.push_back(Subgroup::from_elements(g, els));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

Subgroup canonical_conjugate(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<Element> best = h.elements();
  for (Element n = 1; n < g.order(); ++n) {
    std::vector<Element> els;
    els.reserve(best.size());
    for (Element x : h.elements()) els.push_back(g.conjugate(x, n));
    std::sort(els.begin(), els.end());
    if (els < best) best = std::move(els);
  }
  return Subgroup::from_elements(g, std::move(best));
}

std::vector<SubgroupClass> subgroups_up_to_conjugacy(const FiniteGroup& g, const EnumerationOptions& options) {
  std::vector<Subgroup> subs = all_subgroups(g, options);
  std::map<std::vector<Element>, std::size_t> position;
  for (std::size_t i = 0; i < subs.size(); ++i) position.emplace(subs[i].elements(), i);

  std::vector<char> assigned(subs.size(), 0);
  std::vector<SubgroupClass> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (assigned[i]) continue;
    std::set<std::vector<Element>> conjugates;
    for (Element n = 0; n < g.order(); ++n) conjugates.insert(subs[i].conjugate(n).elements());
    for (const auto& els : conjugates) assigned[position.at(els)] = 1;
    Subgroup rep = Subgroup::from_elements(g, *conjugates.begin());
    Subgroup norm = normalizer(g, rep);
    classes.push_back(SubgroupClass{rep, static_cast<int>(conjugates.size()), norm});
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.representative.order() != b.representative.order())
      return a.representative.order() < b.representative.order();
    return a.representative.elements() < b.representative.elements();
  });
  return classes;
}

OrbitDecomposition orbit_decomposition(const DirectSquare& sq, const Subgroup& h) {
  if (!h.parent().same_table(sq.square))
    throw Error(ErrorKind::WrongAmbient, "acting subgroup is not inside the direct square");
  const FiniteGroup& g = sq.base;
  OrbitDecomposition out{h, {}, {}, {}, {}};
  std::vector<char> seen(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Element> orbit;
    std::vector<Element> stab;
    for (Element pair : h.elements()) {
      const Element h1 = sq.first(pair);
      const Element h2 = sq.second(pair);
      const Element y = g.mul(g.mul(h1, x), g.inv(h2));
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
      if (y == x) stab.push_back(pair);
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<Element> projected;
    for (Element pair : stab) projected.push_back(sq.first(pair));
    out.orbits.push_back(std::move(orbit));
    out.representatives.push_back(x);
    out.stabilizers.push_back(Subgroup::from_elements(sq.square, std::move(stab)));
    out.projected_stabilizers.push_back(Subgroup::from_elements(g, std::move(projected)));
  }
  return out;
}

std::vector<std::vector<Element>> double_cosets(const Subgroup& h1, const Subgroup& h2) {
  const FiniteGroup& g = h1.parent();
  if (!h2.parent().same_table(g)) throw Error(ErrorKind::NotASubgroup, "subgroups of different groups");
  std::vector<std::vector<Element>> out;
  std::vector<char> seen(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Element> coset;
    for (Element a : h1.elements()) {
      const Element ax = g.mul(a, x);
      for (Element b : h2.elements()) {
        const Element y = g.mul(ax, b);
        if (!seen[y]) {
          seen[y] = 1;
          coset.push_back(y);
        }
      }
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

bool is_exact_factorization(const FiniteGroup& g, const Subgroup& h, const Subgroup& h1) {
  if (static_cast<long>(h.order()) * h1.order() != g.order()) return false;
  std::vector<char> hit(g.order(), 0);
  for (Element a : h.elements())
    for (Element b : h1.elements()) {
      const Element x = g.mul(a, b);
      if (hit[x]) return false;
      hit[x] = 1;
    }
  return true;
}

}  // namespace tdmc
