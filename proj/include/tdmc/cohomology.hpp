#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tdmc/cochain.hpp"
#include "tdmc/group.hpp"

namespace tdmc {

/// A finite cohomology group Z/d1 + ... + Z/dr with d1 | d2 | ... | dr, all
/// d_i > 1, together with representative cocycles and a coordinate map.
struct CohomologyGroup {
  int degree = 0;
  /// Modulus of the representative cocycles and of lookup() input.
  i64 modulus = 1;
  std::vector<i64> invariant_factors;
  std::vector<Cochain> generators;
  /// Coordinates of a cocycle, entry i reduced mod invariant_factors[i].
  std::function<std::vector<i64>(const Cochain&)> coordinates;

  /// Checks degree, modulus and the cocycle condition, then calls coordinates.
  std::vector<i64> lookup(const Cochain& cocycle) const;
  i64 size() const;
  bool is_trivial() const { return invariant_factors.empty(); }
  /// sum coords[i] * generators[i]
  Cochain element(const std::vector<i64>& coords) const;
  /// Every coordinate vector, in lexicographic order.
  std::vector<std::vector<i64>> all_coordinates() const;
};

struct CohomologyOptions {
  /// Upper bound on the number of normalized unknowns, (|G|-1)^degree.
  std::size_t max_unknowns = 50000;
};

/// H^n(G, mu_M) for n in {1, 2, 3}.
CohomologyGroup cohomology_mod(const FiniteGroup& g, int n, i64 m, const CohomologyOptions& options = {});

/// H^n(G, C*) realised as the image of H^n(G, mu_L) in H^n(G, mu_{L|G|}).
/// `modulus` L must be a multiple of |G|; 0 means |G|. Generators are
/// mu_L-valued and lookup() accepts any Z/L cocycle.
CohomologyGroup cohomology_cstar(const FiniteGroup& g, int n, i64 modulus = 0, const CohomologyOptions& options = {});

/// If the class of the cocycle f (values in Z/M) dies in H^n(H, C*), returns
/// phi with values in Z/(M*headroom) and d(phi) = f.embedded(M*headroom).
/// `headroom` defaults to |H|, which always suffices: a trivializing C*-valued
/// phi can be rescaled to take values in mu_{M|H|}.
std::optional<Cochain> cstar_trivialization(const Cochain& f, i64 headroom = 0);
bool is_trivial_over_cstar(const Cochain& f, i64 headroom = 0);

/// psi0 on H with d(psi0) = f|_H, in the modulus of f, or nullopt when the
/// restriction is non-trivial over C*. The modulus must be a multiple of
/// |H| times the value order of f|_H (ModulusMismatch otherwise). The result
/// has every free parameter of the eliminator set to zero, so it is deterministic.
std::optional<Cochain> solve_trivialization(const Cochain& f, const Subgroup& h);
std::optional<Cochain> solve_trivialization(const Cochain& f, const Subgroup& h, const FiniteGroup& local);

/// The generator of H^3(G, C*) selected for omega = k * omega0: the first
/// generator of cohomology_cstar(G, 3), or the zero cochain if that is trivial.
struct OmegaBasis {
  CohomologyGroup h3;
  Cochain omega0;
  i64 period = 1;  // order of omega0

  Cochain omega(i64 k) const { return omega0.scaled(k); }
};
OmegaBasis omega_basis(const FiniteGroup& g);

}  // namespace tdmc
