#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tdmc::linalg {

using i64 = std::int64_t;

i64 mod(i64 a, i64 m);
i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
i64 ipow(i64 base, int exp);

struct PrimePower {
  i64 prime = 0;
  int exponent = 0;
  i64 value = 1;  // prime^exponent
};

/// Prime-power factorization of m >= 1, primes ascending.
std::vector<PrimePower> factorize(i64 m);

/// x with x = residues[i] (mod moduli[i]); moduli pairwise coprime.
i64 crt(const std::vector<i64>& residues, const std::vector<i64>& moduli);

/// Arithmetic in Z/p^k. Every element is u*p^v with u a unit, which is what
/// makes Smith form over this ring a plain minimal-valuation pivot search.
class LocalRing {
 public:
  LocalRing(i64 prime, int exponent);

  i64 prime() const { return p_; }
  int exponent() const { return k_; }
  i64 modulus() const { return q_; }

  i64 reduce(i64 a) const { return mod(a, q_); }
  i64 add(i64 a, i64 b) const { return reduce(a + b); }
  i64 sub(i64 a, i64 b) const { return reduce(a - b); }
  i64 mul(i64 a, i64 b) const { return static_cast<i64>((static_cast<__int128>(a) * b) % q_); }
  /// k for zero.
  int valuation(i64 a) const;
  i64 unit_inverse(i64 u) const;
  i64 power_of_p(int e) const { return pow_[e]; }
  /// a / p^e for a divisible by p^e, as a representative in [0, q).
  i64 divide_by_p(i64 a, int e) const { return reduce(a) / pow_[e]; }

 private:
  i64 p_;
  int k_;
  i64 q_;
  std::vector<i64> pow_;
};

using Matrix = std::vector<std::vector<i64>>;

/// Smith form P*A*Q = D over Z/p^k. Only the column transform is kept
/// (Q and its inverse); row operations are replayed on `augment` columns so a
/// right-hand side can be carried through.
struct SmithForm {
  int rows = 0;
  int cols = 0;
  /// Diagonal entries are p^exponents[i] for i < rank, zero afterwards.
  std::vector<int> exponents;
  int rank() const { return static_cast<int>(exponents.size()); }
  Matrix q;
  Matrix q_inverse;
  /// Augment columns after the row operations, one vector per augment column.
  std::vector<std::vector<i64>> augment;
};

SmithForm smith_form(const LocalRing& ring, Matrix a, int cols, std::vector<std::vector<i64>> augment = {});

/// A finite Z/p^k-module presented as a direct sum of cyclic summands with
/// explicit generators inside an ambient free module.
struct CyclicDecomposition {
  /// Summand i is Z/p^orders[i]; all orders > 0.
  std::vector<int> orders;
  /// generators[i] lives in the ambient (Z/p^k)^n.
  std::vector<std::vector<i64>> generators;
};

/// Kernel of the dense matrix (rows of length `cols`).
CyclicDecomposition dense_kernel(const LocalRing& ring, const Matrix& a, int cols);

/// (Z/p^k)^n / <relations>, with coordinates for the quotient.
struct Quotient {
  std::vector<int> orders;          // Z/p^orders[j], zero summands dropped
  std::vector<int> kept;            // which transformed coordinates survive
  Matrix q;                         // n x n column transform
  Matrix q_inverse;
  /// Coordinates (mod p^orders[j]) of the class of x.
  std::vector<i64> coordinates(const LocalRing& ring, const std::vector<i64>& x) const;
  /// Ambient representative of the j-th generator.
  std::vector<i64> generator(int j) const;
};

Quotient quotient_module(const LocalRing& ring, const Matrix& relations, int n);

using SparseRow = std::vector<std::pair<int, i64>>;

/// Row-reduction of a sparse system A x = b over Z/p^k.
///
/// Unit pivots are eliminated sparsely (shortest row first); whatever is left
/// has every entry divisible by p and is handed to a dense Smith form over the
/// columns that never received a pivot. The solution set is parametrised by
/// those free columns alone: pivot columns follow by back substitution.
class SparseSystem {
 public:
  SparseSystem(const LocalRing& ring, int cols, std::vector<SparseRow> rows, std::vector<i64> rhs = {});

  const LocalRing& ring() const { return ring_; }
  int cols() const { return cols_; }
  bool consistent() const { return consistent_; }

  /// One solution with every free parameter zero, if consistent.
  std::optional<std::vector<i64>> particular_solution() const;

  /// Kernel of A as a direct sum of cyclic modules.
  int kernel_rank() const { return static_cast<int>(kernel_orders_.size()); }
  const std::vector<int>& kernel_orders() const { return kernel_orders_; }
  std::vector<i64> kernel_generator(int i) const;
  /// Kernel element with the given coordinates.
  std::vector<i64> kernel_element(const std::vector<i64>& coords) const;
  /// Coordinates of x (assumed to lie in the kernel); only reads free columns.
  std::vector<i64> kernel_coordinates(const std::vector<i64>& x) const;
  /// Same, from the values at the free columns alone.
  std::vector<i64> kernel_coordinates_from_free(const std::vector<i64>& free_values) const;
  const std::vector<int>& free_columns() const { return free_; }

 private:
  struct Pivot {
    int col;
    i64 unit_inverse;
    SparseRow row;
    i64 rhs;
  };

  std::vector<i64> back_substitute(std::vector<i64> free_values, bool homogeneous) const;

  LocalRing ring_;
  int cols_;
  bool consistent_ = true;
  std::vector<Pivot> pivots_;
  std::vector<int> free_;
  SmithForm residual_;
  // Summand i of the kernel corresponds to transformed free coordinate
  // kernel_slot_[i], scaled by p^kernel_shift_[i].
  std::vector<int> kernel_slot_;
  std::vector<int> kernel_shift_;
  std::vector<int> kernel_orders_;
};

}  // namespace tdmc::linalg
