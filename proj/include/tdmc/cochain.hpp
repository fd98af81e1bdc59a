#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "tdmc/group.hpp"

namespace tdmc {

using i64 = std::int64_t;

/// A function G^n -> Z/M, written additively: the value k stands for the root
/// of unity exp(2 pi i k / M). Values are stored for every tuple (row-major,
/// first argument most significant).
class Cochain {
 public:
  Cochain(FiniteGroup group, int degree, i64 modulus);

  static Cochain from_function(FiniteGroup group, int degree, i64 modulus,
                               const std::function<i64(std::span<const Element>)>& f);
  static Cochain from_values(FiniteGroup group, int degree, i64 modulus, std::vector<i64> values);

  const FiniteGroup& group() const { return group_; }
  int degree() const { return degree_; }
  i64 modulus() const { return modulus_; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(std::span<const Element> args) const;
  i64 operator()(std::span<const Element> args) const { return values_[index(args)]; }
  i64 operator()(std::initializer_list<Element> args) const {
    return (*this)(std::span<const Element>(args.begin(), args.size()));
  }
  i64 at(std::size_t flat) const { return values_[flat]; }
  void set(std::span<const Element> args, i64 v);
  void set_flat(std::size_t flat, i64 v);
  std::span<const i64> values() const { return values_; }

  /// Zero whenever some argument is the identity.
  bool is_normalized() const;
  bool is_zero() const;

  /// Smallest N dividing the modulus with every value a multiple of modulus/N:
  /// the cochain takes values in mu_N.
  i64 value_order() const;

  /// Reinterpret in Z/new_modulus through mu_M -> mu_new (needs M | new).
  Cochain embedded(i64 new_modulus) const;
  /// Inverse of embedded(): needs value_order() | new_modulus | modulus.
  Cochain contracted(i64 new_modulus) const;
  Cochain scaled(i64 factor) const;

  Cochain operator+(const Cochain& other) const;
  Cochain operator-(const Cochain& other) const;
  Cochain operator-() const;
  friend bool operator==(const Cochain& a, const Cochain& b);

  /// Unpacks a flat index into its argument tuple.
  void unflatten(std::size_t flat, std::span<Element> args) const;

 private:
  void check_compatible(const Cochain& other) const;

  FiniteGroup group_;
  int degree_;
  i64 modulus_;
  std::vector<i64> values_;
};

/// Inhomogeneous bar differential with trivial action:
/// df(g1..g{n+1}) = f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..gn).
Cochain coboundary(const Cochain& f);
bool is_cocycle(const Cochain& f);

/// Restriction to H; the result lives on h.as_group() (or on `local`, which
/// must be that group).
Cochain restrict_to(const Cochain& f, const Subgroup& h);
Cochain restrict_to(const Cochain& f, const Subgroup& h, const FiniteGroup& local);

enum class Projection { First, Second };
/// p_i^* f on G x G.
Cochain pullback(const Cochain& f, const DirectSquare& sq, Projection which);

/// p1^* w - p2^* w. Throws NotACocycle unless dw = 0.
Cochain build_tilde_omega(const Cochain& omega, const DirectSquare& sq);

}  // namespace tdmc
