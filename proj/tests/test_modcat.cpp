#include <doctest.h>

#include <algorithm>
#include <random>

#include "tdmc/cohomology.hpp"
#include "tdmc/error.hpp"
#include "tdmc/group_spec.hpp"
#include "tdmc/modcat.hpp"
#include "tdmc/twisted_algebra.hpp"

using namespace tdmc;

namespace {

DoubleContext s3_context(i64 k) {
  const FiniteGroup s3 = builtin_group("S3");
  return make_double_context(s3, omega_basis(s3).omega(k));
}

struct Classified {
  DoubleContext ctx;
  ClassificationReport report;
};

const Classified& s3_classified(i64 k) {
  static std::map<i64, Classified> cache;
  auto it = cache.find(k);
  if (it == cache.end()) {
    DoubleContext ctx = s3_context(k);
    ClassificationReport r = classify_double(ctx);
    it = cache.emplace(k, Classified{std::move(ctx), std::move(r)}).first;
  }
  return it->second;
}

// sum over conjugacy classes c of the number of conjugacy classes of C_G(c)
int centralizer_class_sum(const FiniteGroup& g) {
  int total = 0;
  for (const auto& cls : conjugacy_classes(g))
    total += static_cast<int>(conjugacy_classes(centralizer(g, cls.front()).as_group()).size());
  return total;
}

PairHPsi shifted(const Context& ctx, const PairHPsi& p, std::mt19937& rng) {
  Cochain phi(p.local, 1, p.psi.modulus());
  for (std::size_t i = 1; i < phi.size(); ++i) phi.set_flat(i, static_cast<i64>(rng() % p.psi.modulus()));
  return make_pair(ctx, p.subgroup, p.psi + coboundary(phi));
}

std::vector<int> rank_multiset(const DoubleContext& ctx, const Subgroup& h) {
  const FiniteGroup local = h.as_group();
  const auto psi0 = solve_trivialization(ctx.tilde.omega, h, local);
  REQUIRE(psi0.has_value());
  const auto h2 = cohomology_cstar(local, 2, ctx.modulus());
  std::vector<int> ranks;
  for (const auto& coords : h2.all_coordinates()) {
    const Cochain psi = coords.empty() ? *psi0 : *psi0 + h2.element(coords);
    ranks.push_back(module_rank_double(ctx, make_pair(ctx.tilde, h, psi)).total_rank);
  }
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

}  // namespace

TEST_CASE("stabilizer cocycles close at S3 scale") {
  for (i64 k = 0; k < 6; ++k) {
    const auto& [ctx, report] = s3_classified(k);
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs)
        for (Element g = 0; g < ctx.base.order(); ++g) {
          const LocalTerm t = psi_g_double(ctx, p.pair, g);
          CHECK(is_cocycle(t.psi));
          CHECK(t.local.order() == t.stabilizer.order());
        }
  }
}

TEST_CASE("bimodule pairing cocycles close at S3 scale") {
  for (i64 k : {0, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    std::vector<PairHPsi> pairs;
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs) pairs.push_back(p.pair);
    for (std::size_t i = 0; i < pairs.size(); i += 3)
      for (const auto& q : pairs)
        for (const auto& coset : double_cosets(pairs[i].subgroup, q.subgroup))
          CHECK(is_cocycle(psi_g_general(ctx.tilde, pairs[i], q, coset.back()).psi));
  }
}

TEST_CASE("stabilizer counts agree with the centre of the twisted algebra") {
  for (i64 k : {0, 2, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs) {
        REQUIRE(p.rank.has_value());
        int sum = 0;
        for (const auto& t : p.rank->terms) {
          const TwistedAlgebra a(t.local, t.psi);
          CHECK(t.m == center_dimension_oracle(a));
          CHECK(t.m == projective_irrep_count(a));
          sum += t.m;
        }
        CHECK(sum == p.rank->total_rank);
      }
  }
}

TEST_CASE("ranks do not depend on the cocycle representative or coset representative") {
  std::mt19937 rng(41);
  for (i64 k : {0, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs) {
        const int rank = p.rank->total_rank;
        CHECK(module_rank_double(ctx, shifted(ctx.tilde, p.pair, rng)).total_rank == rank);
        const auto orbits = orbit_decomposition(ctx.square, c.representative);
        std::vector<Element> last;
        for (const auto& o : orbits.orbits) last.push_back(o.back());
        CHECK(module_rank_double(ctx, p.pair, &last).total_rank == rank);
      }
  }
}

TEST_CASE("module ranks as bimodules over the diagonal") {
  for (i64 k : {0, 1, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    const PairHPsi diag = trivial_pair(ctx.tilde, ctx.square.diagonal);
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs) {
        CHECK(bimodule_rank(ctx.tilde, diag, p.pair).total_rank == p.rank->total_rank);
        CHECK(bimodule_rank(ctx.tilde, p.pair, diag).total_rank == p.rank->total_rank);
      }
  }
}

TEST_CASE("bimodule ranks are symmetric") {
  const auto& [ctx, report] = s3_classified(0);
  std::vector<PairHPsi> pairs;
  for (const auto& c : report.classes)
    for (const auto& p : c.pairs) pairs.push_back(p.pair);
  for (std::size_t i = 0; i < pairs.size(); i += 2)
    for (std::size_t j = i; j < pairs.size(); j += 5)
      CHECK(bimodule_rank(ctx.tilde, pairs[i], pairs[j]).total_rank ==
            bimodule_rank(ctx.tilde, pairs[j], pairs[i]).total_rank);
}

TEST_CASE("ranks are invariant under conjugating the subgroup") {
  for (i64 k : {0, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    for (const auto& c : report.classes) {
      if (!c.admissible) continue;
      std::vector<int> expected;
      for (const auto& p : c.pairs)
        for (int i = 0; i < p.orbit_size; ++i) expected.push_back(p.rank->total_rank);
      std::sort(expected.begin(), expected.end());
      for (Element n : {7, 20, 33}) CHECK(rank_multiset(ctx, c.representative.conjugate(n)) == expected);
    }
  }
}

TEST_CASE("simple bimodules counted from the convolution algebra") {
  for (i64 k : {0, 3}) {
    const auto& [ctx, report] = s3_classified(k);
    const PairHPsi diag = trivial_pair(ctx.tilde, ctx.square.diagonal);
    std::vector<PairHPsi> pairs;
    for (const auto& c : report.classes)
      for (const auto& p : c.pairs) pairs.push_back(p.pair);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& left = i % 2 ? pairs[i] : diag;
      const auto& right = pairs[(i * 7) % pairs.size()];
      int total = 0;
      for (const auto& coset : double_cosets(left.subgroup, right.subgroup))
        total += oracle_simple_bimodules(ctx.tilde, left, right, coset.front());
      CHECK(total == bimodule_rank(ctx.tilde, left, right).total_rank);
    }
  }
}

TEST_CASE("untwisted diagonal rank counts pairs of commuting data") {
  for (std::string name : {"Z2", "Z3", "Z4", "Z2xZ2", "S3"}) {
    const FiniteGroup g = builtin_group(name);
    const DoubleContext ctx = make_double_context(g, Cochain(g, 3, g.order()));
    CAPTURE(name);
    const int rank = module_rank_double(ctx, trivial_pair(ctx.tilde, ctx.square.diagonal)).total_rank;
    CHECK(rank == centralizer_class_sum(g));
  }
  // for abelian groups this is |G|^2 simple objects
  const FiniteGroup z4 = builtin_group("Z4");
  const DoubleContext ctx = make_double_context(z4, Cochain(z4, 3, 4));
  CHECK(module_rank_double(ctx, trivial_pair(ctx.tilde, ctx.square.diagonal)).total_rank == 16);
}

TEST_CASE("small doubles") {
  const FiniteGroup z2 = builtin_group("Z2");
  const DoubleContext c2 = make_double_context(z2, Cochain(z2, 3, 2));
  const auto r2 = classify_double(c2);
  CHECK(r2.classes.size() == 5);
  CHECK(r2.total_pairs() == 6);
  // Z2 x Z2 as a whole carries the non-trivial class
  CHECK(r2.classes.back().pairs.size() == 2);

  const FiniteGroup one = FiniteGroup::trivial();
  const auto r1 = classify_double(make_double_context(one, Cochain(one, 3, 1)));
  CHECK(r1.total_pairs() == 1);
  REQUIRE(r1.fiber_functors.size() == 1);
  CHECK(r1.classes[0].pairs[0].rank->total_rank == 1);

  // the twisted double of Z2 with its non-trivial omega
  const auto basis = omega_basis(z2);
  REQUIRE(basis.period == 2);
  const auto rt = classify_double(make_double_context(z2, basis.omega(1)));
  for (const auto& c : rt.classes)
    if (c.admissible)
      for (const auto& p : c.pairs) CHECK(p.rank->total_rank >= 1);
}

TEST_CASE("pair validation and transport") {
  const DoubleContext ctx = s3_context(1);
  const Subgroup whole = Subgroup::whole(ctx.square.square);
  const FiniteGroup local = whole.as_group();
  try {
    make_pair(ctx.tilde, whole, Cochain(local, 2, ctx.modulus()));
    FAIL("G x G accepted at k = 1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotTrivializing);
  }
  const auto& [c0, report] = s3_classified(0);
  for (const auto& c : report.classes)
    for (const auto& p : c.pairs)
      for (Element n : c.representative.elements()) {
        // conjugation by an element of H fixes the class of psi
        const Cochain moved = transport(c0.tilde, p.pair, n);
        CHECK(c.h2.lookup(moved - p.pair.psi) == std::vector<i64>(c.h2.invariant_factors.size(), 0));
      }
}

TEST_CASE("fiber functors from exact factorizations") {
  const FiniteGroup s3 = builtin_group("S3");
  const Context ctx{s3, Cochain(s3, 3, 36)};
  const Subgroup z3 = all_subgroups(s3)[4];
  REQUIRE(z3.order() == 3);
  const auto ff = fiber_functors(ctx, trivial_pair(ctx, z3));
  bool exact = false;
  for (const auto& p : ff) {
    CHECK(bimodule_rank(ctx, trivial_pair(ctx, z3), p).total_rank == 1);
    exact = exact || (p.subgroup.order() == 2 && is_exact_factorization(s3, z3, p.subgroup));
  }
  CHECK(exact);

  // Vec_G over itself: the trivial subgroup is the standard fiber functor
  const auto vec = fiber_functors(ctx, trivial_pair(ctx, Subgroup::trivial(s3)));
  REQUIRE(vec.size() == 1);
  CHECK(vec[0].subgroup.order() == 6);

  // fiber functors of the double agree with the general search over the diagonal
  const auto& [dctx, report] = s3_classified(0);
  const auto general = fiber_functors(dctx.tilde, trivial_pair(dctx.tilde, dctx.square.diagonal));
  CHECK(general.size() == report.fiber_functors.size());
}
