#pragma once

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "tdmc/cochain.hpp"
#include "tdmc/cohomology.hpp"
#include "tdmc/group.hpp"

namespace tdmc {

/// A group with a 3-cocycle, both in the session modulus.
struct Context {
  FiniteGroup ambient;
  Cochain omega;

  i64 modulus() const { return omega.modulus(); }
};

/// G, its square, omega on G and omega~ = p1* omega - p2* omega on G x G, all in
/// Z/modulus with modulus = |G x G|^2 by default.
struct DoubleContext {
  FiniteGroup base;
  DirectSquare square;
  Cochain omega;
  Context tilde;

  i64 modulus() const { return omega.modulus(); }
};

/// omega is any 3-cocycle on g; it is embedded into the session modulus.
DoubleContext make_double_context(const FiniteGroup& g, const Cochain& omega, i64 modulus = 0);

/// A subgroup H of the context's ambient group with psi on H (living on
/// `local`, element i being subgroup.elements()[i]) and d psi = omega|_H.
struct PairHPsi {
  Subgroup subgroup;
  FiniteGroup local;
  Cochain psi;

  Element element(int i) const { return subgroup.elements()[static_cast<std::size_t>(i)]; }
  /// psi at two ambient elements of H.
  i64 at(Element a, Element b) const;
};

/// Validates d psi = omega|_H (NotTrivializing otherwise).
PairHPsi make_pair(const Context& ctx, const Subgroup& h, const Cochain& psi);
/// (H, 0); needs omega|_H = 0 pointwise.
PairHPsi trivial_pair(const Context& ctx, const Subgroup& h);

/// A stabilizer subgroup of G with its 2-cocycle and the count m.
struct LocalTerm {
  Element rep = 0;
  int orbit_size = 0;
  Subgroup stabilizer;
  FiniteGroup local;
  Cochain psi;
  int m = 0;
};

struct RankBreakdown {
  std::vector<LocalTerm> terms;
  int total_rank = 0;
};

/// Pairing cocycle on H1 cap g H2 g^-1 for bimodules between (H1, psi1) and
/// (H2, psi2):
/// psi^g(h,h') = psi1(h,h') + psi2(g^-1 h'^-1 g, g^-1 h^-1 g)
///             - omega(hh'g, g^-1 h'^-1 g, g^-1 h^-1 g) + omega(h,h',g)
///             + omega(h, h'g, g^-1 h'^-1 g).
/// Throws FormulaNotClosed if the result is not a 2-cocycle.
LocalTerm psi_g_general(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2, Element g);

/// Stabilizer cocycle for H <= G x G acting on G by (h1,h2).g = h1 g h2^-1.
/// The stabilizer {h : (h, g^-1 h g) in H} is viewed inside G and
/// psi^g(h,h') = -psi((h,g^-1 h g),(h',g^-1 h' g))
///             + omega(g^-1,h'^-1,h^-1) + omega(h,h',h'^-1) + omega(g^-1 h' g, g^-1 h'^-1, h^-1)
///             - omega(hh',h'^-1,h^-1) - omega(g^-1 h g, g^-1 h' g, g^-1 h'^-1 h^-1).
/// Throws FormulaNotClosed if the result is not a 2-cocycle.
LocalTerm psi_g_double(const DoubleContext& ctx, const PairHPsi& pair, Element g);

/// Rank of the category of (A(H1,psi1), A(H2,psi2))-bimodules: a sum over
/// H1\G/H2 of projective irrep counts. `reps`, when given, overrides the
/// default (least element) representative of each double coset, in order.
RankBreakdown bimodule_rank(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2,
                            const std::vector<Element>* reps = nullptr);

/// Rank of M(H, psi) over the twisted double; same override convention.
RankBreakdown module_rank_double(const DoubleContext& ctx, const PairHPsi& pair,
                                 const std::vector<Element>* reps = nullptr);

/// Rank of the dual category: bimodules of the pair with itself over G x G.
int dual_rank(const DoubleContext& ctx, const PairHPsi& pair);

/// Simple bimodules supported on H1 g H2, counted from the operators
/// j_h = i1_{h,g} o i2_{hg,k} (k = g^-1 h^-1 g) by rewriting j_h o j_h' with the
/// left-module, right-module and commutation relations into s(h,h') j_{h'h} and
/// measuring the centre of the resulting algebra numerically. Test oracle.
int oracle_simple_bimodules(const Context& ctx, const PairHPsi& p1, const PairHPsi& p2, Element g);

/// psi^n on H for n normalizing H: psi(n^-1 x n, n^-1 y n) + c_n(x, y) with
/// c_n(x,y) = omega(x,y,n) - omega(x,n,n^-1 y n) + omega(n,n^-1 x n,n^-1 y n).
/// Throws FormulaNotClosed unless d(psi^n) = omega|_H.
Cochain transport(const Context& ctx, const PairHPsi& pair, Element n);

struct PairClass {
  std::vector<i64> psi;  // coordinates over the torsor base point, in H^2(H, C*)
  int orbit_size = 0;    // size of the normalizer orbit on the torsor
  PairHPsi pair;
  std::optional<RankBreakdown> rank;
};

struct SubgroupReport {
  std::string label;
  Subgroup representative;
  int class_size = 0;
  bool admissible = false;
  CohomologyGroup h2;  // H^2(H, C*), only filled for admissible classes
  std::optional<Cochain> base_psi;  // torsor base point psi0
  int double_cosets = 0;  // |Delta(G)\G x G/H| in the double case
  std::vector<PairClass> pairs;

  /// psi0 + sum coords[i] * h2.generators[i]
  Cochain psi_at(const std::vector<i64>& coords) const;
};

struct ClassificationReport {
  i64 omega_k = 0;
  i64 modulus = 1;
  std::vector<SubgroupReport> classes;
  /// (class index, pair index) of each fiber functor; double case only.
  std::vector<std::pair<int, int>> fiber_functors;

  int total_pairs() const;
};

struct ClassifyOptions {
  EnumerationOptions enumeration;
  bool with_ranks = true;
};

/// Pairs (H, psi) over a context, H up to ambient conjugacy and psi up to the
/// normalizer action, labelled C1..Cn in subgroup order.
ClassificationReport classify_pairs(const Context& ctx, const ClassifyOptions& options = {});

/// The same for the double of (G, omega), with module ranks and fiber functors.
/// Labels are H1..H22 when G is isomorphic to S3.
ClassificationReport classify_double(const DoubleContext& ctx, const ClassifyOptions& options = {});

/// Fiber functors of C(G, omega, H, psi): pairs (H1, psi1) with admissible H1,
/// a single double coset H\G/H1 and psi - psi1 nondegenerate on H cap H1.
/// Every returned pair is checked to give a rank one module category.
std::vector<PairHPsi> fiber_functors(const Context& ctx, const PairHPsi& base,
                                     const EnumerationOptions& options = {});

/// H1..H22 for the subgroup classes of S3 x S3 built from a group isomorphic to
/// S3, otherwise nullopt.
std::optional<std::string> s3_label(const DoubleContext& ctx, const Subgroup& h);

}  // namespace tdmc
