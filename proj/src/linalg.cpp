#include "tdmc/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace tdmc::linalg {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) { return a / gcd(a, b) * b; }

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<PrimePower> factorize(i64 m) {
  if (m < 1) throw std::invalid_argument("factorize: m must be positive");
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (m % p == 0) {
      m /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (m > 1) out.push_back({m, 1, m});
  return out;
}

namespace {

// returns (g, x) with a*x = g (mod m)
std::pair<i64, i64> ext_gcd_inverse(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return {old_r, mod(old_s, m)};
}

}  // namespace

i64 crt(const std::vector<i64>& residues, const std::vector<i64>& moduli) {
  i64 x = 0;
  i64 m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    // x + m*t = residues[i] (mod moduli[i])
    const i64 mi = moduli[i];
    auto [g, inv] = ext_gcd_inverse(m % mi, mi);
    if (g != 1 && mi != 1) throw std::invalid_argument("crt: moduli not coprime");
    const i64 t = mod(static_cast<i64>(static_cast<__int128>(mod(residues[i] - x, mi)) * inv % mi), mi);
    x += m * t;
    m *= mi;
    x = mod(x, m);
  }
  return x;
}

// ------------------------------------------------------------------ LocalRing

LocalRing::LocalRing(i64 prime, int exponent) : p_(prime), k_(exponent), q_(ipow(prime, exponent)) {
  if (q_ <= 0 || q_ > (i64{1} << 40)) throw std::invalid_argument("LocalRing: modulus out of range");
  pow_.resize(k_ + 1);
  pow_[0] = 1;
  for (int i = 1; i <= k_; ++i) pow_[i] = pow_[i - 1] * p_;
}

int LocalRing::valuation(i64 a) const {
  a = reduce(a);
  if (a == 0) return k_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

i64 LocalRing::unit_inverse(i64 u) const {
  auto [g, inv] = ext_gcd_inverse(u, q_);
  if (g != 1) throw std::invalid_argument("unit_inverse: not a unit");
  return inv;
}

// ---------------------------------------------------------------- Smith form

SmithForm smith_form(const LocalRing& ring, Matrix a, int cols, std::vector<std::vector<i64>> augment) {
  const int k = ring.exponent();
  SmithForm out;
  out.rows = static_cast<int>(a.size());
  out.cols = cols;
  // drop zero rows up front; they never pivot and their augment entries stay put
  {
    Matrix kept;
    std::vector<std::vector<i64>> kept_aug(augment.size());
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (auto& v : a[i]) v = ring.reduce(v);
      if (std::any_of(a[i].begin(), a[i].end(), [](i64 v) { return v != 0; })) {
        kept.push_back(std::move(a[i]));
        for (std::size_t t = 0; t < augment.size(); ++t) kept_aug[t].push_back(ring.reduce(augment[t][i]));
      } else {
        zero_rows.push_back(i);
      }
    }
    for (std::size_t i : zero_rows)
      for (std::size_t t = 0; t < augment.size(); ++t) kept_aug[t].push_back(ring.reduce(augment[t][i]));
    a = std::move(kept);
    augment = std::move(kept_aug);
  }
  const int r = static_cast<int>(a.size());

  out.q.assign(cols, std::vector<i64>(cols, 0));
  out.q_inverse.assign(cols, std::vector<i64>(cols, 0));
  for (int i = 0; i < cols; ++i) out.q[i][i] = out.q_inverse[i][i] = 1;

  for (int t = 0; t < std::min(r, cols); ++t) {
    int best = k, bi = -1, bj = -1;
    for (int i = t; i < r && best > 0; ++i)
      for (int j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        const int v = ring.valuation(a[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;

    if (bi != t) {
      std::swap(a[bi], a[t]);
      for (auto& col : augment) std::swap(col[bi], col[t]);
    }
    if (bj != t) {
      for (auto& row : a) std::swap(row[bj], row[t]);
      for (auto& row : out.q) std::swap(row[bj], row[t]);
      std::swap(out.q_inverse[bj], out.q_inverse[t]);
    }

    const i64 unit = ring.divide_by_p(a[t][t], best);
    const i64 uinv = ring.unit_inverse(unit);
    for (int j = t; j < cols; ++j) a[t][j] = ring.mul(a[t][j], uinv);
    for (auto& col : augment) col[t] = ring.mul(col[t], uinv);

    for (int i = t + 1; i < r; ++i) {
      if (a[i][t] == 0) continue;
      const i64 f = ring.divide_by_p(a[i][t], best);
      for (int j = t; j < cols; ++j)
        if (a[t][j] != 0) a[i][j] = ring.sub(a[i][j], ring.mul(f, a[t][j]));
      for (auto& col : augment) col[i] = ring.sub(col[i], ring.mul(f, col[t]));
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      const i64 f = ring.divide_by_p(a[t][j], best);
      a[t][j] = 0;
      for (int i = 0; i < cols; ++i)
        if (out.q[i][t] != 0) out.q[i][j] = ring.sub(out.q[i][j], ring.mul(f, out.q[i][t]));
      for (int i = 0; i < cols; ++i)
        if (out.q_inverse[j][i] != 0) out.q_inverse[t][i] = ring.add(out.q_inverse[t][i], ring.mul(f, out.q_inverse[j][i]));
    }
    out.exponents.push_back(best);
  }
  out.augment = std::move(augment);
  return out;
}

CyclicDecomposition dense_kernel(const LocalRing& ring, const Matrix& a, int cols) {
  SmithForm s = smith_form(ring, a, cols);
  CyclicDecomposition out;
  for (int i = 0; i < cols; ++i) {
    int order = ring.exponent();
    int shift = 0;
    if (i < s.rank()) {
      order = s.exponents[i];
      shift = ring.exponent() - order;
    }
    if (order == 0) continue;
    std::vector<i64> g(cols);
    for (int r = 0; r < cols; ++r) g[r] = ring.mul(s.q[r][i], ring.power_of_p(shift));
    out.orders.push_back(order);
    out.generators.push_back(std::move(g));
  }
  return out;
}

Quotient quotient_module(const LocalRing& ring, const Matrix& relations, int n) {
  SmithForm s = smith_form(ring, relations, n);
  Quotient out;
  for (int j = 0; j < n; ++j) {
    const int order = j < s.rank() ? s.exponents[j] : ring.exponent();
    if (order == 0) continue;
    out.orders.push_back(order);
    out.kept.push_back(j);
  }
  out.q = std::move(s.q);
  out.q_inverse = std::move(s.q_inverse);
  return out;
}

std::vector<i64> Quotient::coordinates(const LocalRing& ring, const std::vector<i64>& x) const {
  std::vector<i64> out(kept.size());
  for (std::size_t t = 0; t < kept.size(); ++t) {
    const int j = kept[t];
    i64 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) s = ring.add(s, ring.mul(x[i], q[i][j]));
    out[t] = mod(s, ring.power_of_p(orders[t]));
  }
  return out;
}

std::vector<i64> Quotient::generator(int j) const { return q_inverse[kept[j]]; }

// -------------------------------------------------------------- SparseSystem

namespace {

void axpy_row(const LocalRing& ring, SparseRow& target, i64 f, const SparseRow& source, std::vector<int>& added) {
  // target -= f * source
  SparseRow out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || source[j].first < target[i].first) {
      // f is often divisible by p, so the product can vanish
      const i64 v = ring.sub(0, ring.mul(f, source[j].second));
      if (v != 0) {
        out.emplace_back(source[j].first, v);
        added.push_back(source[j].first);
      }
      ++j;
    } else {
      const i64 v = ring.sub(target[i].second, ring.mul(f, source[j].second));
      if (v != 0) out.emplace_back(target[i].first, v);
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

i64 entry_at(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? it->second : 0;
}

}  // namespace

SparseSystem::SparseSystem(const LocalRing& ring, int cols, std::vector<SparseRow> rows, std::vector<i64> rhs)
    : ring_(ring), cols_(cols) {
  const int nrows = static_cast<int>(rows.size());
  rhs.resize(nrows, 0);
  for (int i = 0; i < nrows; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end());
    SparseRow merged;
    for (const auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second = ring_.add(merged.back().second, v);
      else
        merged.emplace_back(c, ring_.reduce(v));
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    row = std::move(merged);
    rhs[i] = ring_.reduce(rhs[i]);
  }

  std::vector<std::vector<int>> col_rows(cols);
  for (int i = 0; i < nrows; ++i)
    for (const auto& e : rows[i]) col_rows[e.first].push_back(i);

  enum class State : char { Open, Pivoted, Residual, Dropped };
  std::vector<State> state(nrows, State::Open);
  std::vector<char> pivoted_col(cols, 0);

  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int i = 0; i < nrows; ++i) heap.emplace(rows[i].size(), i);

  std::vector<int> added;
  while (!heap.empty()) {
    auto [len, i] = heap.top();
    heap.pop();
    if (state[i] != State::Open || rows[i].size() != len) continue;
    if (rows[i].empty()) {
      state[i] = State::Dropped;
      if (rhs[i] != 0) consistent_ = false;
      continue;
    }
    int col = -1;
    std::size_t best_count = 0;
    i64 unit = 0;
    for (const auto& [c, v] : rows[i]) {
      if (v % ring_.prime() == 0) continue;
      if (col < 0 || col_rows[c].size() < best_count) {
        col = c;
        best_count = col_rows[c].size();
        unit = v;
      }
    }
    if (col < 0) {
      state[i] = State::Residual;
      continue;
    }

    state[i] = State::Pivoted;
    pivoted_col[col] = 1;
    const i64 uinv = ring_.unit_inverse(unit);
    for (int j : col_rows[col]) {
      if (j == i || state[j] == State::Pivoted || state[j] == State::Dropped) continue;
      const i64 a = entry_at(rows[j], col);
      if (a == 0) continue;
      const i64 f = ring_.mul(a, uinv);
      added.clear();
      axpy_row(ring_, rows[j], f, rows[i], added);
      rhs[j] = ring_.sub(rhs[j], ring_.mul(f, rhs[i]));
      for (int c : added) col_rows[c].push_back(j);
      if (state[j] == State::Open) heap.emplace(rows[j].size(), j);
    }
    col_rows[col].clear();
    col_rows[col].shrink_to_fit();
    pivots_.push_back(Pivot{col, uinv, std::move(rows[i]), rhs[i]});
  }

  std::vector<int> free_index(cols, -1);
  for (int c = 0; c < cols; ++c)
    if (!pivoted_col[c]) {
      free_index[c] = static_cast<int>(free_.size());
      free_.push_back(c);
    }

  Matrix residual;
  std::vector<i64> residual_rhs;
  for (int i = 0; i < nrows; ++i) {
    if (state[i] != State::Residual) continue;
    if (rows[i].empty()) {
      if (rhs[i] != 0) consistent_ = false;
      continue;
    }
    std::vector<i64> dense(free_.size(), 0);
    for (const auto& [c, v] : rows[i]) dense[free_index[c]] = v;
    residual.push_back(std::move(dense));
    residual_rhs.push_back(rhs[i]);
  }
  residual_ = smith_form(ring_, std::move(residual), static_cast<int>(free_.size()), {std::move(residual_rhs)});
  const auto& b = residual_.augment[0];
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int need = static_cast<int>(i) < residual_.rank() ? residual_.exponents[i] : ring_.exponent();
    if (b[i] != 0 && ring_.valuation(b[i]) < need) consistent_ = false;
  }

  for (int i = 0; i < static_cast<int>(free_.size()); ++i) {
    int order = ring_.exponent();
    if (i < residual_.rank()) order = residual_.exponents[i];
    if (order == 0) continue;
    kernel_slot_.push_back(i);
    kernel_shift_.push_back(ring_.exponent() - order);
    kernel_orders_.push_back(order);
  }
}

std::vector<i64> SparseSystem::back_substitute(std::vector<i64> free_values, bool homogeneous) const {
  std::vector<i64> x(cols_, 0);
  for (std::size_t t = 0; t < free_.size(); ++t) x[free_[t]] = ring_.reduce(free_values[t]);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    i64 s = homogeneous ? 0 : it->rhs;
    for (const auto& [c, v] : it->row)
      if (c != it->col && x[c] != 0) s = ring_.sub(s, ring_.mul(v, x[c]));
    x[it->col] = ring_.mul(s, it->unit_inverse);
  }
  return x;
}

std::optional<std::vector<i64>> SparseSystem::particular_solution() const {
  if (!consistent_) return std::nullopt;
  const int f = static_cast<int>(free_.size());
  std::vector<i64> y(f, 0);
  const auto& b = residual_.augment[0];
  for (int i = 0; i < residual_.rank(); ++i) y[i] = ring_.divide_by_p(b[i], residual_.exponents[i]);
  std::vector<i64> xf(f, 0);
  for (int r = 0; r < f; ++r)
    for (int i = 0; i < f; ++i)
      if (y[i] != 0) xf[r] = ring_.add(xf[r], ring_.mul(residual_.q[r][i], y[i]));
  return back_substitute(std::move(xf), false);
}

std::vector<i64> SparseSystem::kernel_element(const std::vector<i64>& coords) const {
  const int f = static_cast<int>(free_.size());
  std::vector<i64> y(f, 0);
  for (std::size_t t = 0; t < kernel_slot_.size(); ++t)
    y[kernel_slot_[t]] = ring_.mul(ring_.reduce(coords[t]), ring_.power_of_p(kernel_shift_[t]));
  std::vector<i64> xf(f, 0);
  for (int r = 0; r < f; ++r)
    for (int i = 0; i < f; ++i)
      if (y[i] != 0) xf[r] = ring_.add(xf[r], ring_.mul(residual_.q[r][i], y[i]));
  return back_substitute(std::move(xf), true);
}

std::vector<i64> SparseSystem::kernel_generator(int i) const {
  std::vector<i64> coords(kernel_slot_.size(), 0);
  coords[i] = 1;
  return kernel_element(coords);
}

std::vector<i64> SparseSystem::kernel_coordinates_from_free(const std::vector<i64>& free_values) const {
  const int f = static_cast<int>(free_.size());
  std::vector<i64> out(kernel_slot_.size());
  for (std::size_t t = 0; t < kernel_slot_.size(); ++t) {
    const int i = kernel_slot_[t];
    i64 y = 0;
    for (int j = 0; j < f; ++j)
      if (free_values[j] != 0) y = ring_.add(y, ring_.mul(residual_.q_inverse[i][j], free_values[j]));
    out[t] = mod(ring_.divide_by_p(y, kernel_shift_[t]), ring_.power_of_p(kernel_orders_[t]));
  }
  return out;
}

std::vector<i64> SparseSystem::kernel_coordinates(const std::vector<i64>& x) const {
  std::vector<i64> fv(free_.size());
  for (std::size_t t = 0; t < free_.size(); ++t) fv[t] = ring_.reduce(x[free_[t]]);
  return kernel_coordinates_from_free(fv);
}

}  // namespace tdmc::linalg
