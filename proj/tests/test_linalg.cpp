#include <doctest.h>

#include <random>

#include "tdmc/linalg.hpp"

using namespace tdmc::linalg;

namespace {

std::vector<i64> apply(const LocalRing& r, const std::vector<SparseRow>& rows, const std::vector<i64>& x) {
  std::vector<i64> out;
  for (const auto& row : rows) {
    i64 s = 0;
    for (auto [c, v] : row) s = r.add(s, r.mul(v, x[c]));
    out.push_back(s);
  }
  return out;
}

// Brute-force kernel size over (Z/q)^n.
long kernel_size(const LocalRing& r, const std::vector<SparseRow>& rows, int n) {
  long count = 0;
  std::vector<i64> x(n, 0);
  const i64 q = r.modulus();
  while (true) {
    const auto y = apply(r, rows, x);
    if (std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; })) ++count;
    int i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("number theory helpers") {
  CHECK(mod(-1, 6) == 5);
  CHECK(gcd(12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  const auto f = factorize(1296);
  REQUIRE(f.size() == 2);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 4);
  CHECK(f[1].value == 81);
  CHECK(crt({1, 2}, {4, 9}) == 29);
  const LocalRing r(3, 4);
  CHECK(r.valuation(0) == 4);
  CHECK(r.valuation(18) == 2);
  CHECK(r.mul(r.unit_inverse(7), 7) == 1);
}

TEST_CASE("sparse systems against brute force") {
  std::mt19937 rng(17);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {2, 3}, {3, 2}}) {
    const LocalRing r(p, k);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const int m = 1 + static_cast<int>(rng() % 5);
      std::vector<SparseRow> rows(m);
      for (auto& row : rows)
        for (int c = 0; c < n; ++c)
          if (rng() % 2) {
            const i64 v = r.reduce(static_cast<i64>(rng()));
            if (v) row.emplace_back(c, v);
          }
      SparseSystem sys(r, n, rows);
      long predicted = 1;
      for (int o : sys.kernel_orders()) predicted *= static_cast<long>(ipow(p, o));
      CHECK(predicted == kernel_size(r, rows, n));
      for (int i = 0; i < sys.kernel_rank(); ++i) {
        const auto g = sys.kernel_generator(i);
        const auto y = apply(r, rows, g);
        CHECK(std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; }));
        std::vector<i64> unit(sys.kernel_rank(), 0);
        unit[i] = 1;
        CHECK(sys.kernel_coordinates(g) == unit);
      }
      // inhomogeneous: a right-hand side in the image is always solvable
      std::vector<i64> x(n);
      for (auto& v : x) v = r.reduce(static_cast<i64>(rng()));
      SparseSystem inh(r, n, rows, apply(r, rows, x));
      REQUIRE(inh.consistent());
      CHECK(apply(r, rows, *inh.particular_solution()) == apply(r, rows, x));
    }
  }
  // 2x = 1 has no solution mod 4
  const LocalRing r4(2, 2);
  SparseSystem bad(r4, 1, {{{0, 2}}}, {1});
  CHECK_FALSE(bad.consistent());
  CHECK_FALSE(bad.particular_solution().has_value());
}

TEST_CASE("quotients") {
  const LocalRing r(2, 3);
  // (Z/8)^2 / <(2, 0), (0, 4)> = Z/2 + Z/4
  const auto q = quotient_module(r, {{2, 0}, {0, 4}}, 2);
  auto orders = q.orders;
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>{1, 2});
  for (std::size_t j = 0; j < q.orders.size(); ++j) {
    auto c = q.coordinates(r, q.generator(static_cast<int>(j)));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == (i == j ? 1 : 0));
  }
  CHECK(q.coordinates(r, {2, 4}) == std::vector<i64>(q.orders.size(), 0));
}
