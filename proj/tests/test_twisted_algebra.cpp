#include <doctest.h>

#include <random>

#include "tdmc/cohomology.hpp"
#include "tdmc/error.hpp"
#include "tdmc/group_spec.hpp"
#include "tdmc/twisted_algebra.hpp"

using namespace tdmc;

namespace {

Cochain shifted(const Cochain& psi, std::mt19937& rng) {
  Cochain phi(psi.group(), 1, psi.modulus());
  for (std::size_t i = 1; i < phi.size(); ++i) phi.set_flat(i, static_cast<i64>(rng() % psi.modulus()));
  return psi + coboundary(phi);
}

}  // namespace

TEST_CASE("untwisted algebras count conjugacy classes") {
  for (std::string name : {"Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8"}) {
    const FiniteGroup g = builtin_group(name);
    const TwistedAlgebra a(g, Cochain(g, 2, 12));
    CAPTURE(name);
    CHECK(projective_irrep_count(a) == static_cast<int>(conjugacy_classes(g).size()));
    CHECK(center_dimension_oracle(a) == projective_irrep_count(a));
  }
}

TEST_CASE("projective counts against the centre of the algebra") {
  std::mt19937 rng(31);
  for (std::string name : {"Z2xZ2", "Z3xZ3", "D4", "Z4xZ2"}) {
    const FiniteGroup g = builtin_group(name);
    const auto h2 = cohomology_cstar(g, 2, 4 * g.order());
    for (const auto& coords : h2.all_coordinates()) {
      const Cochain psi = shifted(h2.element(coords), rng);
      const TwistedAlgebra a(g, psi);
      CAPTURE(name);
      CHECK(projective_irrep_count(a) == center_dimension_oracle(a));
    }
  }
}

TEST_CASE("nondegenerate cocycles") {
  const FiniteGroup k4 = builtin_group("Z2xZ2");
  const auto h2 = cohomology_cstar(k4, 2);
  CHECK(is_nondegenerate(TwistedAlgebra(k4, h2.generators.at(0))));
  CHECK_FALSE(is_nondegenerate(TwistedAlgebra(k4, Cochain(k4, 2, 4))));
  const TwistedAlgebra one(FiniteGroup::trivial(), Cochain(FiniteGroup::trivial(), 2, 1));
  CHECK(is_nondegenerate(one));
  CHECK(projective_irrep_count(one) == 1);

  const FiniteGroup z33 = builtin_group("Z3xZ3");
  const auto h3 = cohomology_cstar(z33, 2);
  for (const auto& coords : h3.all_coordinates()) {
    const TwistedAlgebra a(z33, h3.element(coords));
    // a twisted Z3 x Z3 is either commutative or a 3 x 3 matrix algebra
    CHECK(is_nondegenerate(a) == (coords[0] != 0));
    CHECK(projective_irrep_count(a) == (coords[0] != 0 ? 1 : 9));
  }
}

TEST_CASE("twisted algebra input checks") {
  const FiniteGroup s3 = builtin_group("S3");
  Cochain bad(s3, 2, 6);
  bad.set(std::vector<Element>{1, 2}, 1);
  CHECK_THROWS_AS(TwistedAlgebra(s3, bad), Error);
  CHECK_THROWS_AS(TwistedAlgebra(s3, Cochain(s3, 3, 6)), Error);
  CHECK_THROWS_AS(TwistedAlgebra(builtin_group("Z6"), Cochain(s3, 2, 6)), Error);
}
