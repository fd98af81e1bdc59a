#pragma once

#include "tdmc/cochain.hpp"
#include "tdmc/group.hpp"

namespace tdmc {

/// The twisted group algebra C_psi[H]: basis e_h with e_h e_k = zeta^psi(h,k) e_hk,
/// zeta = exp(2 pi i / modulus).
class TwistedAlgebra {
 public:
  /// Throws NotACocycle unless d psi = 0.
  TwistedAlgebra(FiniteGroup group, Cochain psi);

  const FiniteGroup& group() const { return group_; }
  const Cochain& psi() const { return psi_; }

 private:
  FiniteGroup group_;
  Cochain psi_;
};

/// h is psi-regular when psi(h,x) = psi(x,h) for every x commuting with h.
bool is_psi_regular(const TwistedAlgebra& a, Element h);

/// Number of psi-regular conjugacy classes, which is the number of irreducible
/// psi-projective representations.
int projective_irrep_count(const TwistedAlgebra& a);

/// Dimension of the centre of C_psi[H], computed in double precision as the
/// nullity (singular values below 1e-9) of the commutation system. Test oracle,
/// not used by the engine. Throws SizeBound above order 64.
int center_dimension_oracle(const TwistedAlgebra& a);

/// The algebra is a full matrix algebra.
bool is_nondegenerate(const TwistedAlgebra& a);

}  // namespace tdmc
