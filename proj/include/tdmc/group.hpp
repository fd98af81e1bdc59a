#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tdmc {

/// Dense element index into a FiniteGroup. Index 0 is always the identity.
using Element = int;

/// A finite group stored as a Cayley table over the indices 0..order-1.
///
/// Instances are immutable and share their tables, so copying is cheap and
/// a Subgroup can hold its parent by value.
class FiniteGroup {
 public:
  /// Validates `table` (square, closed, associative, with identity and
  /// inverses). If the identity is not at index 0 the labels 0 and e are
  /// swapped so that it is.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                std::vector<std::string> names = {});

  /// Closure of permutations on `degree` points (zero-based images).
  /// Elements are numbered breadth-first from the identity, multiplying on the
  /// right by the generators in the given order. Products compose as
  /// functions: (x*y)(i) = x(y(i)).
  static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& generators);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);

  int order() const { return data_->order; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return data_->table[static_cast<std::size_t>(a) * data_->order + b]; }
  Element inv(Element a) const { return data_->inverse[a]; }
  /// n x n^-1
  Element conjugate(Element x, Element n) const { return mul(mul(n, x), inv(n)); }
  int element_order(Element x) const;

  const std::string& name(Element x) const { return data_->names[x]; }
  const std::vector<std::string>& names() const { return data_->names; }

  /// Row-major Cayley table.
  std::span<const int> table() const { return data_->table; }

  bool is_abelian() const;

  /// Same multiplication table (names are ignored).
  bool same_table(const FiniteGroup& other) const;
  bool shares_data(const FiniteGroup& other) const { return data_ == other.data_; }

  /// Throws if `x` is not a valid index.
  void check_element(Element x) const;

 private:
  struct Data {
    int order = 0;
    std::vector<int> table;
    std::vector<int> inverse;
    std::vector<std::string> names;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Exhaustive associativity, unit and inverse check. Intended for tests and
/// group construction at desk-scale orders.
bool satisfies_group_laws(const FiniteGroup& g);

/// Is there a bijection f with f(0)=0 and f(xy)=f(x)f(y)? Brute force over
/// images of a generating set; only meant for small test groups.
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Subset of a parent group closed under multiplication and inversion.
class Subgroup {
 public:
  /// Validates closure; throws NotASubgroup otherwise.
  static Subgroup from_elements(const FiniteGroup& parent, std::vector<Element> elements);
  static Subgroup generated_by(const FiniteGroup& parent, std::span<const Element> generators);
  static Subgroup whole(const FiniteGroup& parent);
  static Subgroup trivial(const FiniteGroup& parent);

  const FiniteGroup& parent() const { return data_->parent; }
  /// Sorted; the first entry is the identity.
  const std::vector<Element>& elements() const { return data_->elements; }
  int order() const { return static_cast<int>(data_->elements.size()); }
  bool contains(Element x) const { return data_->local[x] >= 0; }
  /// Position of `x` in elements(), or -1.
  int local_index(Element x) const { return data_->local[x]; }

  /// The subgroup as a group in its own right: element i is elements()[i].
  FiniteGroup as_group() const;

  /// n H n^-1
  Subgroup conjugate(Element n) const;
  Subgroup intersect(const Subgroup& other) const;
  bool is_subgroup_of(const Subgroup& other) const;

  /// Greedy generating set: walk the elements in index order and keep each one
  /// not already in the span of the previous picks.
  std::vector<Element> generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.data_->elements == b.data_->elements;
  }

 private:
  struct Data {
    FiniteGroup parent;
    std::vector<Element> elements;
    std::vector<int> local;
  };

  explicit Subgroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static Subgroup make(const FiniteGroup& parent, std::vector<Element> sorted);

  std::shared_ptr<const Data> data_;
};

/// G x G with the encoding (a, b) -> a*|G| + b.
struct DirectSquare {
  FiniteGroup base;
  FiniteGroup square;
  Subgroup diagonal;
  std::vector<Element> p1;
  std::vector<Element> p2;

  Element pair(Element a, Element b) const { return a * base.order() + b; }
  Element first(Element x) const { return p1[x]; }
  Element second(Element x) const { return p2[x]; }
  /// {(a, e) : a in k}
  Subgroup left_factor(const Subgroup& k) const;
  /// {(e, b) : b in k}
  Subgroup right_factor(const Subgroup& k) const;
  /// {(a, a) : a in k}
  Subgroup diagonal_of(const Subgroup& k) const;
};

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
DirectSquare direct_square_with_diagonal(const FiniteGroup& g);

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, Element x);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

struct SubgroupClass {
  Subgroup representative;
  int class_size = 0;
  Subgroup normalizer;
};

struct EnumerationOptions {
  int max_order = 100;
};

/// All subgroups of `g`, deduplicated, in (order, element set) order.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, const EnumerationOptions& options = {});

/// One representative per conjugacy class of subgroups; each representative is
/// the lexicographically least element set among its conjugates. Sorted by
/// (order, element set).
std::vector<SubgroupClass> subgroups_up_to_conjugacy(const FiniteGroup& g,
                                                     const EnumerationOptions& options = {});

/// Canonical (lexicographically least) conjugate of `h`.
Subgroup canonical_conjugate(const Subgroup& h);

struct OrbitDecomposition {
  Subgroup acting;
  std::vector<std::vector<Element>> orbits;
  std::vector<Element> representatives;
  /// {(h1,h2) in H : h1 g h2^-1 = g}, as a subgroup of G x G.
  std::vector<Subgroup> stabilizers;
  /// First projection of each stabilizer, a subgroup of G.
  std::vector<Subgroup> projected_stabilizers;
};

/// Orbits of H <= G x G on G under (h1,h2).g = h1 g h2^-1. Representatives are
/// the least index of each orbit; orbits are listed in order of representative.
OrbitDecomposition orbit_decomposition(const DirectSquare& sq, const Subgroup& h);

/// H1 \ G / H2, each coset sorted, listed by least element.
std::vector<std::vector<Element>> double_cosets(const Subgroup& h1, const Subgroup& h2);

bool is_exact_factorization(const FiniteGroup& g, const Subgroup& h, const Subgroup& h1);

}  // namespace tdmc
