#include <doctest.h>

#include <algorithm>
#include <set>

#include "tdmc/error.hpp"
#include "tdmc/group.hpp"
#include "tdmc/group_spec.hpp"

using namespace tdmc;

namespace {

const char* const kBuiltins[] = {"Z1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "S3xS3"};

// Brute-force subgroup census: starting from the trivial subgroup, keep adding
// one element to every subgroup found until nothing new appears.
std::set<std::vector<Element>> every_subgroup_by_growth(const FiniteGroup& g) {
  std::set<std::vector<Element>> out{{0}};
  std::vector<std::vector<Element>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& h : frontier)
      for (Element x = 0; x < g.order(); ++x) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        std::vector<Element> gens = h;
        gens.push_back(x);
        auto grown = Subgroup::generated_by(g, gens).elements();
        if (out.insert(grown).second) next.push_back(std::move(grown));
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("builtin groups satisfy the group laws") {
  for (std::string name : kBuiltins) {
    CAPTURE(name);
    const FiniteGroup g = builtin_group(name);
    CHECK(satisfies_group_laws(g));
    for (Element x = 0; x < g.order(); ++x) {
      CHECK(g.mul(0, x) == x);
      CHECK(g.mul(x, g.inv(x)) == 0);
    }
  }
  CHECK(builtin_group("S3").order() == 6);
  CHECK(builtin_group("S3xS3").order() == 36);
  CHECK(builtin_group("Q8").order() == 8);
  CHECK_FALSE(builtin_group("Q8").is_abelian());
}

TEST_CASE("group specs") {
  using nlohmann::json;
  const FiniteGroup z2 = group_from_spec(json{{"type", "cayley"}, {"table", {{0, 1}, {1, 0}}}});
  CHECK(z2.order() == 2);
  CHECK(z2.inv(1) == 1);

  const FiniteGroup perm = group_from_spec(json::parse(R"({"type":"perm","degree":3,"generators":[[2,1,3],[2,3,1]]})"));
  CHECK(perm.order() == 6);
  CHECK(are_isomorphic(perm, builtin_group("S3")));
  CHECK_FALSE(are_isomorphic(builtin_group("Z4"), builtin_group("Z2xZ2")));
  CHECK_FALSE(are_isomorphic(builtin_group("D4"), builtin_group("Q8")));

  // identity not at index 0 is relabelled
  const FiniteGroup moved = FiniteGroup::from_table({{1, 0}, {0, 1}});
  CHECK(moved.mul(0, 1) == 1);

  CHECK_THROWS_AS(builtin_group("nope"), Error);
  try {
    builtin_group("nope");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownBuiltin);
  }
  try {
    FiniteGroup::from_table({{0, 1, 2}, {1, 0, 0}, {2, 0, 1}});
    FAIL("not a group");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::NotAGroup || e.kind() == ErrorKind::NonAssociative));
  }
  // a Latin square with identity that is not associative
  try {
    FiniteGroup::from_table({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
    FAIL("not associative");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonAssociative);
  }
  CHECK_THROWS_AS(resolve_group_argument("{not json"), Error);
  CHECK(resolve_group_argument("S3").group.order() == 6);
  CHECK(resolve_group_argument(R"({"type":"builtin","name":"Z3"})").group.order() == 3);
}

TEST_CASE("direct square and diagonal") {
  for (std::string name : {"Z1", "Z2", "S3"}) {
    CAPTURE(name);
    const FiniteGroup g = builtin_group(name);
    const DirectSquare sq = direct_square_with_diagonal(g);
    CHECK(sq.square.order() == g.order() * g.order());
    CHECK(sq.diagonal.order() == g.order());
    for (Element a = 0; a < sq.square.order(); ++a)
      for (Element b = 0; b < sq.square.order(); ++b) {
        CHECK(sq.first(sq.square.mul(a, b)) == g.mul(sq.first(a), sq.first(b)));
        CHECK(sq.second(sq.square.mul(a, b)) == g.mul(sq.second(a), sq.second(b)));
      }
    for (Element x = 0; x < g.order(); ++x) CHECK(sq.diagonal.contains(sq.pair(x, x)));
  }
  const DirectSquare z2 = direct_square_with_diagonal(builtin_group("Z2"));
  CHECK(are_isomorphic(z2.square, builtin_group("Z2xZ2")));
  CHECK(z2.diagonal.order() == 2);
}

TEST_CASE("conjugacy classes, centralizers and normalizers") {
  const FiniteGroup s3 = builtin_group("S3");
  auto classes = conjugacy_classes(s3);
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  for (std::string name : kBuiltins) {
    const FiniteGroup g = builtin_group(name);
    std::vector<int> seen(g.order(), 0);
    for (const auto& c : conjugacy_classes(g)) {
      for (Element x : c) ++seen[x];
      CHECK(c.size() * centralizer(g, c.front()).order() == static_cast<std::size_t>(g.order()));
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
  }
  for (Element x = 0; x < 6; ++x)
    if (s3.element_order(x) == 3) CHECK(centralizer(s3, x).order() == 3);
  const DirectSquare z2 = direct_square_with_diagonal(builtin_group("Z2"));
  CHECK(normalizer(z2.square, z2.diagonal).order() == 4);
  CHECK_THROWS_AS(centralizer(s3, 6), Error);
}

TEST_CASE("subgroup enumeration agrees with brute force") {
  for (std::string name : {"Z4", "Z2xZ2", "S3", "D4", "Q8", "S3xS3"}) {
    CAPTURE(name);
    const FiniteGroup g = builtin_group(name);
    const auto all = all_subgroups(g);
    std::set<std::vector<Element>> listed;
    for (const auto& h : all) listed.insert(h.elements());
    CHECK(listed.size() == all.size());
    CHECK(listed == every_subgroup_by_growth(g));
    const auto classes = subgroups_up_to_conjugacy(g);
    int total = 0;
    for (const auto& c : classes) total += c.class_size;
    CHECK(total == static_cast<int>(all.size()));
    // each subgroup is conjugate to exactly one representative
    for (const auto& h : all) {
      int hits = 0;
      for (const auto& c : classes)
        if (canonical_conjugate(h) == c.representative) ++hits;
      CHECK(hits == 1);
    }
  }
  CHECK(subgroups_up_to_conjugacy(builtin_group("Z2")).size() == 2);
  const auto s3 = subgroups_up_to_conjugacy(builtin_group("S3"));
  std::vector<int> orders;
  for (const auto& c : s3) orders.push_back(c.representative.order());
  CHECK(orders == std::vector<int>{1, 2, 3, 6});
  CHECK(subgroups_up_to_conjugacy(builtin_group("S3xS3")).size() == 22);

  EnumerationOptions tight;
  tight.max_order = 10;
  try {
    subgroups_up_to_conjugacy(builtin_group("S3xS3"), tight);
    FAIL("bound not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeBound);
  }
}

TEST_CASE("orbits of subgroups of G x G on G") {
  const FiniteGroup s3 = builtin_group("S3");
  const DirectSquare sq = direct_square_with_diagonal(s3);
  const auto diag = orbit_decomposition(sq, sq.diagonal);
  CHECK(diag.orbits.size() == 3);
  CHECK(orbit_decomposition(sq, Subgroup::trivial(sq.square)).orbits.size() == 6);
  const auto whole = orbit_decomposition(sq, Subgroup::whole(sq.square));
  REQUIRE(whole.orbits.size() == 1);
  CHECK(whole.projected_stabilizers[0].order() == 6);
  CHECK_THROWS_AS(orbit_decomposition(sq, Subgroup::whole(s3)), Error);

  for (const auto& cls : subgroups_up_to_conjugacy(sq.square)) {
    const Subgroup& h = cls.representative;
    const auto od = orbit_decomposition(sq, h);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < od.orbits.size(); ++i) {
      covered += od.orbits[i].size();
      CHECK(od.orbits[i].size() * od.stabilizers[i].order() == static_cast<std::size_t>(h.order()));
      CHECK(od.projected_stabilizers[i].order() == od.stabilizers[i].order());
      CHECK(od.representatives[i] == od.orbits[i].front());
    }
    CHECK(covered == 6u);
    // same count as Delta(G) \ G x G / H by two-sided cosets
    CHECK(double_cosets(sq.diagonal, h).size() == od.orbits.size());
  }
}

TEST_CASE("exact factorizations") {
  const FiniteGroup s3 = builtin_group("S3");
  const DirectSquare sq = direct_square_with_diagonal(s3);
  CHECK(is_exact_factorization(sq.square, sq.diagonal, sq.right_factor(Subgroup::whole(s3))));
  Subgroup z3 = Subgroup::trivial(s3), z2 = Subgroup::trivial(s3), z2b = Subgroup::trivial(s3);
  for (const auto& h : all_subgroups(s3)) {
    if (h.order() == 3) z3 = h;
    if (h.order() == 2) {
      if (z2.order() == 1)
        z2 = h;
      else
        z2b = h;
    }
  }
  CHECK(is_exact_factorization(s3, z3, z2));
  CHECK_FALSE(is_exact_factorization(s3, z2, z2b));
  CHECK_FALSE(is_exact_factorization(s3, z2, z2));
}
