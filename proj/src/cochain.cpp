#include "tdmc/cochain.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "tdmc/error.hpp"
#include "tdmc/linalg.hpp"

namespace tdmc {

namespace {

std::size_t table_size(int order, int degree) {
  std::size_t s = 1;
  for (int i = 0; i < degree; ++i) s *= static_cast<std::size_t>(order);
  return s;
}

}  // namespace

Cochain::Cochain(FiniteGroup group, int degree, i64 modulus)
    : group_(std::move(group)), degree_(degree), modulus_(modulus) {
  if (degree < 0) throw Error(ErrorKind::DegreeOverflow, "negative degree");
  if (modulus < 1) throw Error(ErrorKind::ModulusMismatch, "modulus must be positive");
  if (degree > 4) throw Error(ErrorKind::DegreeOverflow, "cochains above degree 4 are not supported");
  values_.assign(table_size(group_.order(), degree), 0);
}

Cochain Cochain::from_function(FiniteGroup group, int degree, i64 modulus,
                               const std::function<i64(std::span<const Element>)>& f) {
  Cochain c(std::move(group), degree, modulus);
  std::array<Element, 5> args{};
  for (std::size_t i = 0; i < c.values_.size(); ++i) {
    c.unflatten(i, std::span<Element>(args.data(), degree));
    c.values_[i] = linalg::mod(f(std::span<const Element>(args.data(), degree)), modulus);
  }
  return c;
}

Cochain Cochain::from_values(FiniteGroup group, int degree, i64 modulus, std::vector<i64> values) {
  Cochain c(std::move(group), degree, modulus);
  if (values.size() != c.values_.size())
    throw Error(ErrorKind::ModulusMismatch, "value table has " + std::to_string(values.size()) + " entries, expected " +
                                                std::to_string(c.values_.size()));
  for (auto& v : values) v = linalg::mod(v, modulus);
  c.values_ = std::move(values);
  return c;
}

std::size_t Cochain::index(std::span<const Element> args) const {
  std::size_t idx = 0;
  const auto n = static_cast<std::size_t>(group_.order());
  for (Element a : args) idx = idx * n + static_cast<std::size_t>(a);
  return idx;
}

void Cochain::unflatten(std::size_t flat, std::span<Element> args) const {
  const auto n = static_cast<std::size_t>(group_.order());
  for (int i = degree_ - 1; i >= 0; --i) {
    args[i] = static_cast<Element>(flat % n);
    flat /= n;
  }
}

void Cochain::set(std::span<const Element> args, i64 v) { values_[index(args)] = linalg::mod(v, modulus_); }
void Cochain::set_flat(std::size_t flat, i64 v) { values_[flat] = linalg::mod(v, modulus_); }

bool Cochain::is_normalized() const {
  std::array<Element, 5> args{};
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0) continue;
    unflatten(i, std::span<Element>(args.data(), degree_));
    if (std::any_of(args.begin(), args.begin() + degree_, [](Element x) { return x == 0; })) return false;
  }
  return true;
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](i64 v) { return v == 0; });
}

i64 Cochain::value_order() const {
  i64 g = modulus_;
  for (i64 v : values_) g = linalg::gcd(g, v);
  return modulus_ / g;
}

Cochain Cochain::embedded(i64 new_modulus) const {
  if (new_modulus % modulus_ != 0)
    throw Error(ErrorKind::ModulusMismatch, std::to_string(modulus_) + " does not divide " + std::to_string(new_modulus));
  Cochain c(group_, degree_, new_modulus);
  const i64 f = new_modulus / modulus_;
  for (std::size_t i = 0; i < values_.size(); ++i) c.values_[i] = values_[i] * f;
  return c;
}

Cochain Cochain::contracted(i64 new_modulus) const {
  if (modulus_ % new_modulus != 0 || new_modulus % value_order() != 0)
    throw Error(ErrorKind::ModulusMismatch, "cannot contract values into mu_" + std::to_string(new_modulus));
  Cochain c(group_, degree_, new_modulus);
  const i64 f = modulus_ / new_modulus;
  for (std::size_t i = 0; i < values_.size(); ++i) c.values_[i] = values_[i] / f;
  return c;
}

Cochain Cochain::scaled(i64 factor) const {
  Cochain c(*this);
  for (auto& v : c.values_) v = linalg::mod(static_cast<i64>(static_cast<__int128>(v) * factor % modulus_), modulus_);
  return c;
}

void Cochain::check_compatible(const Cochain& other) const {
  if (degree_ != other.degree_ || modulus_ != other.modulus_ || !group_.same_table(other.group_))
    throw Error(ErrorKind::ModulusMismatch, "cochains differ in group, degree or modulus");
}

Cochain Cochain::operator+(const Cochain& other) const {
  check_compatible(other);
  Cochain c(*this);
  for (std::size_t i = 0; i < values_.size(); ++i) c.values_[i] = linalg::mod(values_[i] + other.values_[i], modulus_);
  return c;
}

Cochain Cochain::operator-(const Cochain& other) const {
  check_compatible(other);
  Cochain c(*this);
  for (std::size_t i = 0; i < values_.size(); ++i) c.values_[i] = linalg::mod(values_[i] - other.values_[i], modulus_);
  return c;
}

Cochain Cochain::operator-() const {
  Cochain c(*this);
  for (auto& v : c.values_) v = linalg::mod(-v, modulus_);
  return c;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.degree_ == b.degree_ && a.modulus_ == b.modulus_ && a.group_.same_table(b.group_) && a.values_ == b.values_;
}

// ------------------------------------------------------------------ operators

Cochain coboundary(const Cochain& f) {
  const int n = f.degree();
  if (n + 1 > 4) throw Error(ErrorKind::DegreeOverflow, "coboundary of a degree " + std::to_string(n) + " cochain");
  const FiniteGroup& g = f.group();
  const i64 m = f.modulus();
  Cochain out(g, n + 1, m);
  std::array<Element, 5> x{};
  std::array<Element, 4> y{};
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out.unflatten(idx, std::span<Element>(x.data(), n + 1));
    i64 s = 0;
    // f(g2..g{n+1})
    for (int j = 0; j < n; ++j) y[j] = x[j + 1];
    s += f(std::span<const Element>(y.data(), n));
    for (int i = 1; i <= n; ++i) {
      for (int j = 0, t = 0; j <= n; ++j) {
        if (j == i) continue;
        y[t++] = (j == i - 1) ? g.mul(x[i - 1], x[i]) : x[j];
      }
      const i64 v = f(std::span<const Element>(y.data(), n));
      s += (i % 2 == 0) ? v : -v;
    }
    const i64 last = f(std::span<const Element>(x.data(), n));
    s += ((n + 1) % 2 == 0) ? last : -last;
    out.set_flat(idx, s);
  }
  return out;
}

bool is_cocycle(const Cochain& f) {
  const int n = f.degree();
  const FiniteGroup& g = f.group();
  std::array<Element, 5> x{};
  std::array<Element, 4> y{};
  const std::size_t total = f.size() * static_cast<std::size_t>(g.order());
  const bool normalized = f.is_normalized();
  for (std::size_t idx = 0; idx < total; ++idx) {
    // same expansion as coboundary(), without materialising the result
    std::size_t rest = idx;
    for (int j = n; j >= 0; --j) {
      x[j] = static_cast<Element>(rest % g.order());
      rest /= g.order();
    }
    if (std::any_of(x.begin(), x.begin() + n + 1, [](Element e) { return e == 0; }) && normalized) continue;
    i64 s = 0;
    for (int j = 0; j < n; ++j) y[j] = x[j + 1];
    s += f(std::span<const Element>(y.data(), n));
    for (int i = 1; i <= n; ++i) {
      for (int j = 0, t = 0; j <= n; ++j) {
        if (j == i) continue;
        y[t++] = (j == i - 1) ? g.mul(x[i - 1], x[i]) : x[j];
      }
      const i64 v = f(std::span<const Element>(y.data(), n));
      s += (i % 2 == 0) ? v : -v;
    }
    const i64 last = f(std::span<const Element>(x.data(), n));
    s += ((n + 1) % 2 == 0) ? last : -last;
    if (linalg::mod(s, f.modulus()) != 0) return false;
  }
  return true;
}

Cochain restrict_to(const Cochain& f, const Subgroup& h) { return restrict_to(f, h, h.as_group()); }

Cochain restrict_to(const Cochain& f, const Subgroup& h, const FiniteGroup& local) {
  if (!h.parent().same_table(f.group())) throw Error(ErrorKind::WrongAmbient, "subgroup of a different group");
  if (local.order() != h.order()) throw Error(ErrorKind::WrongAmbient, "local group does not match subgroup");
  const int n = f.degree();
  const auto& els = h.elements();
  return Cochain::from_function(local, n, f.modulus(), [&](std::span<const Element> args) {
    std::array<Element, 5> up{};
    for (int i = 0; i < n; ++i) up[i] = els[args[i]];
    return f(std::span<const Element>(up.data(), n));
  });
}

Cochain pullback(const Cochain& f, const DirectSquare& sq, Projection which) {
  if (!f.group().same_table(sq.base)) throw Error(ErrorKind::WrongAmbient, "cochain is not on the base group");
  const int n = f.degree();
  const auto& proj = which == Projection::First ? sq.p1 : sq.p2;
  return Cochain::from_function(sq.square, n, f.modulus(), [&](std::span<const Element> args) {
    std::array<Element, 5> down{};
    for (int i = 0; i < n; ++i) down[i] = proj[args[i]];
    return f(std::span<const Element>(down.data(), n));
  });
}

Cochain build_tilde_omega(const Cochain& omega, const DirectSquare& sq) {
  if (omega.degree() != 3) throw Error(ErrorKind::DegreeOverflow, "expected a 3-cochain");
  if (!is_cocycle(omega)) throw Error(ErrorKind::NotACocycle, "omega is not a 3-cocycle");
  return pullback(omega, sq, Projection::First) - pullback(omega, sq, Projection::Second);
}

}  // namespace tdmc
