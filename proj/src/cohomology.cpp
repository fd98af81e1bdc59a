#include "tdmc/cohomology.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <string>

#include "tdmc/error.hpp"
#include "tdmc/linalg.hpp"

namespace tdmc {

using linalg::LocalRing;
using linalg::SparseRow;
using linalg::SparseSystem;

namespace {

// Normalized tuples: every argument is a non-identity element. Column index of
// (x1..xn) is sum (x_i - 1) (N-1)^(n-i).
struct NormalizedIndex {
  int order;
  int degree;
  std::size_t count;

  NormalizedIndex(int order_, int degree_) : order(order_), degree(degree_), count(1) {
    for (int i = 0; i < degree; ++i) count *= static_cast<std::size_t>(order - 1);
  }

  // -1 if some argument is the identity.
  long column(std::span<const Element> args) const {
    long c = 0;
    for (Element a : args) {
      if (a == 0) return -1;
      c = c * (order - 1) + (a - 1);
    }
    return c;
  }

  void tuple(std::size_t c, std::span<Element> args) const {
    for (int i = degree - 1; i >= 0; --i) {
      args[i] = static_cast<Element>(c % static_cast<std::size_t>(order - 1)) + 1;
      c /= static_cast<std::size_t>(order - 1);
    }
  }
};

// The n+2 terms of d f evaluated at x = (x0..x_{n}), f of degree n: a
// (tuple, sign) list. Terms touching the identity are dropped.
template <typename Emit>
void coboundary_terms(const FiniteGroup& g, int n, std::span<const Element> x, Emit&& emit) {
  std::array<Element, 5> y{};
  for (int j = 0; j < n; ++j) y[j] = x[j + 1];
  emit(std::span<const Element>(y.data(), n), 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = 0, t = 0; j <= n; ++j) {
      if (j == i) continue;
      y[t++] = (j == i - 1) ? g.mul(x[i - 1], x[i]) : x[j];
    }
    emit(std::span<const Element>(y.data(), n), i % 2 == 0 ? 1 : -1);
  }
  emit(std::span<const Element>(x.data(), n), (n + 1) % 2 == 0 ? 1 : -1);
}

// Rows of d: C^u -> C^{u+1} restricted to equations whose first argument lies
// in `gens`. For a cocycle target (or the homogeneous system on cocycles) these
// span every equation, because d d = 0 expresses the equation at (ab, ...) via
// those at (a, ...), (b, ...) and equations with fewer free positions.
std::vector<SparseRow> generator_rows(const FiniteGroup& g, int u, const std::vector<Element>& gens,
                                      const LocalRing& ring, std::vector<std::array<Element, 5>>* tuples) {
  const NormalizedIndex unknowns(g.order(), u);
  const NormalizedIndex rest(g.order(), u);  // positions 2..u+1 of the equation
  std::vector<SparseRow> rows;
  std::array<Element, 5> x{};
  std::array<Element, 5> tail{};
  for (Element a : gens) {
    for (std::size_t r = 0; r < rest.count; ++r) {
      rest.tuple(r, std::span<Element>(tail.data(), u));
      x[0] = a;
      for (int i = 0; i < u; ++i) x[i + 1] = tail[i];
      std::map<int, i64> acc;
      coboundary_terms(g, u, std::span<const Element>(x.data(), u + 1), [&](std::span<const Element> t, int s) {
        const long c = unknowns.column(t);
        if (c >= 0) acc[static_cast<int>(c)] += s;
      });
      SparseRow row;
      for (auto [c, v] : acc) {
        const i64 w = ring.reduce(v);
        if (w != 0) row.emplace_back(c, w);
      }
      rows.push_back(std::move(row));
      if (tuples) tuples->push_back(x);
    }
  }
  return rows;
}

std::vector<Element> group_generators(const FiniteGroup& g) {
  if (g.order() == 1) return {};
  return Subgroup::whole(g).generators();
}

void check_size(const FiniteGroup& g, int degree, const CohomologyOptions& options) {
  const NormalizedIndex idx(g.order(), degree);
  if (idx.count > options.max_unknowns)
    throw Error(ErrorKind::SizeBound, "degree " + std::to_string(degree) + " cochains on a group of order " +
                                          std::to_string(g.order()) + " exceed the unknown budget");
}

// H^n(G, Z/p^k) as a list of cyclic p-summands.
struct Primary {
  LocalRing ring;
  std::vector<int> orders;  // exponents
  std::function<std::vector<i64>(const Cochain&)> coords;
  std::vector<std::vector<i64>> generator_values;  // full cochain tables mod p^k
};

Primary primary_cohomology(const FiniteGroup& g, int n, const LocalRing& ring, const std::vector<Element>& gens) {
  const NormalizedIndex cols(g.order(), n);
  auto z = std::make_shared<SparseSystem>(ring, static_cast<int>(cols.count), generator_rows(g, n, gens, ring, nullptr));
  const auto& free = z->free_columns();
  const int r = z->kernel_rank();

  // Coboundaries d(e_t) for normalized (n-1)-tuples t, in kernel coordinates.
  linalg::Matrix relations;
  if (n >= 2) {
    const NormalizedIndex lower(g.order(), n - 1);
    std::vector<std::vector<i64>> free_values(lower.count, std::vector<i64>(free.size(), 0));
    std::array<Element, 5> x{};
    for (std::size_t fi = 0; fi < free.size(); ++fi) {
      cols.tuple(static_cast<std::size_t>(free[fi]), std::span<Element>(x.data(), n));
      coboundary_terms(g, n - 1, std::span<const Element>(x.data(), n), [&](std::span<const Element> t, int s) {
        const long c = lower.column(t);
        if (c >= 0) free_values[static_cast<std::size_t>(c)][fi] += s;
      });
    }
    for (auto& fv : free_values) {
      if (std::all_of(fv.begin(), fv.end(), [](i64 v) { return v == 0; })) continue;
      for (auto& v : fv) v = ring.reduce(v);
      relations.push_back(z->kernel_coordinates_from_free(fv));
    }
  }
  for (int i = 0; i < r; ++i) {
    const int o = z->kernel_orders()[i];
    if (o < ring.exponent()) {
      std::vector<i64> row(r, 0);
      row[i] = ring.power_of_p(o);
      relations.push_back(std::move(row));
    }
  }
  auto quotient = std::make_shared<linalg::Quotient>(linalg::quotient_module(ring, relations, r));

  Primary out{ring, quotient->orders, {}, {}};
  for (std::size_t j = 0; j < quotient->orders.size(); ++j) {
    const auto normalized = z->kernel_element(quotient->generator(static_cast<int>(j)));
    Cochain c(g, n, ring.modulus());
    std::array<Element, 5> x{};
    for (std::size_t col = 0; col < cols.count; ++col) {
      cols.tuple(col, std::span<Element>(x.data(), n));
      c.set(std::span<const Element>(x.data(), n), normalized[col]);
    }
    out.generator_values.emplace_back(c.values().begin(), c.values().end());
  }
  out.coords = [z, quotient, cols, ring](const Cochain& f) {
    // f must be normalized: only the free columns are read.
    std::vector<i64> fv;
    fv.reserve(z->free_columns().size());
    std::array<Element, 5> x{};
    for (int c : z->free_columns()) {
      cols.tuple(static_cast<std::size_t>(c), std::span<Element>(x.data(), cols.degree));
      fv.push_back(ring.reduce(f(std::span<const Element>(x.data(), cols.degree))));
    }
    return quotient->coordinates(ring, z->kernel_coordinates_from_free(fv));
  };
  return out;
}

struct Normalized {
  Cochain cocycle;     // vanishes whenever an argument is the identity
  Cochain correction;  // f = cocycle + d(correction)
};

// Peels identity slots off one position at a time with c(y) = +-f(y, e at p).
// Each accepted step strictly lowers the number of non-zero values at tuples
// containing the identity.
Normalized normalize_cocycle(const Cochain& f) {
  const int n = f.degree();
  Normalized out{f, Cochain(f.group(), std::max(n - 1, 0), f.modulus())};
  if (n == 0) return out;
  auto identity_mass = [n](const Cochain& c) {
    std::size_t k = 0;
    std::array<Element, 5> z{};
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      if (c.at(idx) == 0) continue;
      c.unflatten(idx, std::span<Element>(z.data(), n));
      if (std::any_of(z.begin(), z.begin() + n, [](Element e) { return e == 0; })) ++k;
    }
    return k;
  };
  std::size_t mass = identity_mass(out.cocycle);
  while (mass > 0) {
    bool progressed = false;
    for (int p = n - 1; p >= 0 && !progressed; --p) {
      Cochain c(f.group(), n - 1, f.modulus());
      std::array<Element, 5> x{};
      std::array<Element, 5> y{};
      for (std::size_t idx = 0; idx < c.size(); ++idx) {
        c.unflatten(idx, std::span<Element>(y.data(), n - 1));
        for (int i = 0, t = 0; i < n; ++i) x[i] = (i == p) ? 0 : y[t++];
        c.set_flat(idx, out.cocycle(std::span<const Element>(x.data(), n)));
      }
      if (c.is_zero()) continue;
      for (int sign : {1, -1}) {
        const Cochain step = c.scaled(sign);
        Cochain trial = out.cocycle - coboundary(step);
        const std::size_t m = identity_mass(trial);
        if (m < mass) {
          out.cocycle = std::move(trial);
          out.correction = out.correction + step;
          mass = m;
          progressed = true;
          break;
        }
      }
    }
    if (!progressed) throw Error(ErrorKind::NotACocycle, "cocycle could not be normalized");
  }
  return out;
}

struct Combined {
  std::vector<i64> invariant_factors;
  // For factor j: per prime index, summand index or -1.
  std::vector<std::vector<int>> parts;
};

// Pair the p-parts: the j-th largest summand of every prime goes into the j-th
// largest invariant factor.
Combined combine(const std::vector<linalg::PrimePower>& primes, const std::vector<std::vector<int>>& orders) {
  std::size_t width = 0;
  std::vector<std::vector<int>> sorted(orders.size());
  for (std::size_t p = 0; p < orders.size(); ++p) {
    sorted[p].resize(orders[p].size());
    for (std::size_t i = 0; i < orders[p].size(); ++i) sorted[p][i] = static_cast<int>(i);
    std::stable_sort(sorted[p].begin(), sorted[p].end(),
                     [&](int a, int b) { return orders[p][a] > orders[p][b]; });
    width = std::max(width, orders[p].size());
  }
  Combined out;
  for (std::size_t j = 0; j < width; ++j) {
    i64 d = 1;
    std::vector<int> part(orders.size(), -1);
    for (std::size_t p = 0; p < orders.size(); ++p) {
      if (j < sorted[p].size()) {
        part[p] = sorted[p][j];
        d *= linalg::ipow(primes[p].prime, orders[p][sorted[p][j]]);
      }
    }
    out.invariant_factors.push_back(d);
    out.parts.push_back(std::move(part));
  }
  std::reverse(out.invariant_factors.begin(), out.invariant_factors.end());
  std::reverse(out.parts.begin(), out.parts.end());
  return out;
}

// Idempotent of Z/m that is 1 mod q and 0 mod m/q.
i64 idempotent(i64 m, i64 q) {
  std::vector<i64> residues{1, 0};
  std::vector<i64> moduli{q, m / q};
  if (m / q == 1) return 1 % m;
  return linalg::crt(residues, moduli);
}

struct PrimaryPiece {
  linalg::PrimePower prime;
  std::vector<int> orders;
  std::function<std::vector<i64>(const Cochain&)> coords;  // input already mod p^k
  std::vector<std::vector<i64>> generator_values;          // mod p^k, full tables
};

CohomologyGroup assemble(const FiniteGroup& g, int n, i64 m, std::vector<PrimaryPiece> pieces) {
  std::vector<linalg::PrimePower> primes;
  std::vector<std::vector<int>> orders;
  for (auto& piece : pieces) {
    primes.push_back(piece.prime);
    orders.push_back(piece.orders);
  }
  const Combined comb = combine(primes, orders);
  CohomologyGroup out;
  out.degree = n;
  out.modulus = m;
  out.invariant_factors = comb.invariant_factors;
  std::vector<i64> idem;
  for (auto& piece : pieces) idem.push_back(idempotent(m, piece.prime.value));
  for (std::size_t j = 0; j < comb.parts.size(); ++j) {
    Cochain c(g, n, m);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      const int s = comb.parts[j][p];
      if (s < 0) continue;
      const auto& vals = pieces[p].generator_values[static_cast<std::size_t>(s)];
      for (std::size_t idx = 0; idx < vals.size(); ++idx) {
        const i64 add = static_cast<i64>(static_cast<__int128>(vals[idx]) * idem[p] % m);
        c.set_flat(idx, c.at(idx) + add);
      }
    }
    out.generators.push_back(std::move(c));
  }
  auto shared = std::make_shared<std::vector<PrimaryPiece>>(std::move(pieces));
  out.coordinates = [shared, comb, g, n](const Cochain& f) {
    const Cochain normalized = normalize_cocycle(f).cocycle;
    std::vector<std::vector<i64>> local;
    for (const auto& piece : *shared) {
      Cochain reduced(g, n, piece.prime.value);
      for (std::size_t idx = 0; idx < normalized.size(); ++idx) reduced.set_flat(idx, normalized.at(idx));
      local.push_back(piece.coords(reduced));
    }
    std::vector<i64> coords;
    for (std::size_t j = 0; j < comb.parts.size(); ++j) {
      std::vector<i64> residues, moduli;
      for (std::size_t p = 0; p < shared->size(); ++p) {
        const int s = comb.parts[j][p];
        if (s < 0) continue;
        const auto& piece = (*shared)[p];
        const i64 q = linalg::ipow(piece.prime.prime, piece.orders[static_cast<std::size_t>(s)]);
        residues.push_back(linalg::mod(local[p][static_cast<std::size_t>(s)], q));
        moduli.push_back(q);
      }
      coords.push_back(linalg::crt(residues, moduli));
    }
    return coords;
  };
  return out;
}

void check_degree(int n) {
  if (n < 1 || n > 3) throw Error(ErrorKind::DegreeOverflow, "cohomology is computed in degrees 1 to 3");
}

}  // namespace

std::vector<i64> CohomologyGroup::lookup(const Cochain& cocycle) const {
  if (cocycle.degree() != degree) throw Error(ErrorKind::DegreeOverflow, "cocycle has the wrong degree");
  if (cocycle.modulus() != modulus)
    throw Error(ErrorKind::ModulusMismatch,
                "expected values in Z/" + std::to_string(modulus) + ", got Z/" + std::to_string(cocycle.modulus()));
  if (!is_cocycle(cocycle)) throw Error(ErrorKind::NotACocycle, "input is not a cocycle");
  if (invariant_factors.empty()) return {};
  return coordinates(cocycle);
}

i64 CohomologyGroup::size() const {
  i64 s = 1;
  for (i64 d : invariant_factors) s *= d;
  return s;
}

Cochain CohomologyGroup::element(const std::vector<i64>& coords) const {
  if (coords.size() != generators.size()) throw Error(ErrorKind::ModulusMismatch, "wrong number of coordinates");
  if (generators.empty()) throw Error(ErrorKind::ModulusMismatch, "trivial group has no generators to combine");
  Cochain c(generators.front().group(), degree, modulus);
  for (std::size_t i = 0; i < coords.size(); ++i) c = c + generators[i].scaled(coords[i]);
  return c;
}

std::vector<std::vector<i64>> CohomologyGroup::all_coordinates() const {
  std::vector<std::vector<i64>> out{std::vector<i64>(invariant_factors.size(), 0)};
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    std::vector<std::vector<i64>> next;
    for (const auto& v : out)
      for (i64 a = 0; a < invariant_factors[i]; ++a) {
        auto w = v;
        w[i] = a;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

CohomologyGroup cohomology_mod(const FiniteGroup& g, int n, i64 m, const CohomologyOptions& options) {
  check_degree(n);
  if (m < 1) throw Error(ErrorKind::ModulusMismatch, "modulus must be positive");
  check_size(g, n, options);
  const auto gens = group_generators(g);
  std::vector<PrimaryPiece> pieces;
  for (const auto& pp : linalg::factorize(m)) {
    Primary prim = primary_cohomology(g, n, LocalRing(pp.prime, pp.exponent), gens);
    pieces.push_back(PrimaryPiece{pp, prim.orders, prim.coords, std::move(prim.generator_values)});
  }
  return assemble(g, n, m, std::move(pieces));
}

CohomologyGroup cohomology_cstar(const FiniteGroup& g, int n, i64 modulus, const CohomologyOptions& options) {
  check_degree(n);
  const i64 order = g.order();
  if (modulus == 0) modulus = order;
  if (modulus < 1 || modulus % order != 0)
    throw Error(ErrorKind::ModulusMismatch,
                "modulus " + std::to_string(modulus) + " is not a multiple of |G| = " + std::to_string(order));
  check_size(g, n, options);
  const auto gens = group_generators(g);
  std::vector<PrimaryPiece> pieces;
  for (const auto& pp : linalg::factorize(modulus)) {
    int b = 0;
    for (i64 t = order; t % pp.prime == 0; t /= pp.prime) ++b;
    if (b == 0) continue;  // coprime to |G|: no cohomology
    const LocalRing ra(pp.prime, pp.exponent);
    const LocalRing rb(pp.prime, pp.exponent + b);
    Primary a = primary_cohomology(g, n, ra, gens);
    Primary bb = primary_cohomology(g, n, rb, gens);
    const int r = static_cast<int>(a.orders.size());
    int k = 1;
    for (int o : a.orders) k = std::max(k, o);
    for (int o : bb.orders) k = std::max(k, o);
    const LocalRing rk(pp.prime, k);
    // Matrix of iota in coordinates: row per B-summand, column per A-summand,
    // every congruence mod p^beta_j scaled into Z/p^k.
    linalg::Matrix iota(bb.orders.size(), std::vector<i64>(r, 0));
    for (int i = 0; i < r; ++i) {
      Cochain img(g, n, rb.modulus());
      const auto& vals = a.generator_values[static_cast<std::size_t>(i)];
      const i64 f = linalg::ipow(pp.prime, b);
      for (std::size_t idx = 0; idx < vals.size(); ++idx) img.set_flat(idx, vals[idx] * f);
      const auto coords = bb.coords(img);
      for (std::size_t j = 0; j < bb.orders.size(); ++j)
        iota[j][i] = rk.mul(coords[j], rk.power_of_p(k - bb.orders[j]));
    }
    const auto kernel = linalg::dense_kernel(rk, iota, r);
    linalg::Matrix relations = kernel.generators;
    for (int i = 0; i < r; ++i) {
      if (a.orders[static_cast<std::size_t>(i)] < k) {
        std::vector<i64> row(r, 0);
        row[i] = rk.power_of_p(a.orders[static_cast<std::size_t>(i)]);
        relations.push_back(std::move(row));
      }
    }
    auto quotient = std::make_shared<linalg::Quotient>(linalg::quotient_module(rk, relations, r));
    PrimaryPiece piece{pp, quotient->orders, {}, {}};
    for (std::size_t j = 0; j < quotient->orders.size(); ++j) {
      const auto coords = quotient->generator(static_cast<int>(j));
      std::vector<i64> vals(a.generator_values.empty() ? 0 : a.generator_values[0].size(), 0);
      for (int i = 0; i < r; ++i) {
        const i64 c = linalg::mod(coords[i], linalg::ipow(pp.prime, a.orders[static_cast<std::size_t>(i)]));
        const auto& gv = a.generator_values[static_cast<std::size_t>(i)];
        for (std::size_t idx = 0; idx < vals.size(); ++idx) vals[idx] = ra.add(vals[idx], ra.mul(c, gv[idx]));
      }
      piece.generator_values.push_back(std::move(vals));
    }
    auto a_coords = a.coords;
    piece.coords = [a_coords, quotient, rk](const Cochain& f) {
      auto c = a_coords(f);
      for (auto& v : c) v = rk.reduce(v);
      return quotient->coordinates(rk, c);
    };
    pieces.push_back(std::move(piece));
  }
  return assemble(g, n, modulus, std::move(pieces));
}

namespace {

// Solve d(phi) = target over Z/m for a normalized cocycle target of degree n.
std::optional<Cochain> solve_coboundary(const Cochain& target) {
  const FiniteGroup& g = target.group();
  const int n = target.degree();
  const i64 m = target.modulus();
  const auto gens = group_generators(g);
  const int u = n - 1;
  const NormalizedIndex unknowns(g.order(), u);
  Cochain phi(g, u, m);
  for (const auto& pp : linalg::factorize(m)) {
    const LocalRing ring(pp.prime, pp.exponent);
    std::vector<std::array<Element, 5>> tuples;
    auto rows = generator_rows(g, u, gens, ring, &tuples);
    std::vector<i64> rhs;
    rhs.reserve(rows.size());
    for (const auto& t : tuples) rhs.push_back(ring.reduce(target(std::span<const Element>(t.data(), n))));
    SparseSystem sys(ring, static_cast<int>(unknowns.count), std::move(rows), std::move(rhs));
    auto sol = sys.particular_solution();
    if (!sol) return std::nullopt;
    const i64 e = idempotent(m, pp.value);
    std::array<Element, 5> y{};
    for (std::size_t c = 0; c < unknowns.count; ++c) {
      unknowns.tuple(c, std::span<Element>(y.data(), u));
      const i64 add = static_cast<i64>(static_cast<__int128>((*sol)[c]) * e % m);
      phi.set(std::span<const Element>(y.data(), u), phi(std::span<const Element>(y.data(), u)) + add);
    }
  }
  return phi;
}

}  // namespace

std::optional<Cochain> cstar_trivialization(const Cochain& f, i64 headroom) {
  if (f.degree() < 1) throw Error(ErrorKind::DegreeOverflow, "degree 0 classes are not defined");
  if (!is_cocycle(f)) throw Error(ErrorKind::NotACocycle, "input is not a cocycle");
  if (headroom == 0) headroom = f.group().order();
  const i64 big = f.modulus() * headroom;
  const Normalized norm = normalize_cocycle(f.embedded(big));
  auto phi = solve_coboundary(norm.cocycle);
  if (!phi) return std::nullopt;
  Cochain result = *phi + norm.correction;
  if (!(coboundary(result) == f.embedded(big)))
    throw Error(ErrorKind::NotTrivializing, "trivialization failed verification");
  return result;
}

bool is_trivial_over_cstar(const Cochain& f, i64 headroom) { return cstar_trivialization(f, headroom).has_value(); }

std::optional<Cochain> solve_trivialization(const Cochain& f, const Subgroup& h) {
  return solve_trivialization(f, h, h.as_group());
}

std::optional<Cochain> solve_trivialization(const Cochain& f, const Subgroup& h, const FiniteGroup& local) {
  if (!is_cocycle(f)) throw Error(ErrorKind::NotACocycle, "input is not a cocycle");
  const Cochain r = restrict_to(f, h, local);
  if (f.modulus() % (r.value_order() * h.order()) != 0)
    throw Error(ErrorKind::ModulusMismatch, "modulus " + std::to_string(f.modulus()) +
                                                " leaves no room to decide triviality on a subgroup of order " +
                                                std::to_string(h.order()));
  const Normalized norm = normalize_cocycle(r);
  auto psi = solve_coboundary(norm.cocycle);
  if (!psi) return std::nullopt;
  Cochain result = *psi + norm.correction;
  if (!(coboundary(result) == r)) throw Error(ErrorKind::NotTrivializing, "solution failed verification");
  return result;
}

OmegaBasis omega_basis(const FiniteGroup& g) {
  OmegaBasis out{cohomology_cstar(g, 3), Cochain(g, 3, g.order()), 1};
  if (!out.h3.generators.empty()) {
    out.omega0 = out.h3.generators.front();
    out.period = out.h3.invariant_factors.front();
  }
  return out;
}

}  // namespace tdmc
