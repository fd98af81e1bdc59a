#include "tdmc/twisted_algebra.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "tdmc/error.hpp"

namespace tdmc {

TwistedAlgebra::TwistedAlgebra(FiniteGroup group, Cochain psi) : group_(std::move(group)), psi_(std::move(psi)) {
  if (psi_.degree() != 2) throw Error(ErrorKind::NotACocycle, "twisting must be a 2-cochain");
  if (!psi_.group().same_table(group_)) throw Error(ErrorKind::WrongAmbient, "twisting lives on another group");
  if (!is_cocycle(psi_)) throw Error(ErrorKind::NotACocycle, "twisting is not a 2-cocycle");
}

bool is_psi_regular(const TwistedAlgebra& a, Element h) {
  const FiniteGroup& g = a.group();
  g.check_element(h);
  for (Element x = 0; x < g.order(); ++x) {
    if (g.mul(h, x) != g.mul(x, h)) continue;
    if (a.psi()({h, x}) != a.psi()({x, h})) return false;
  }
  return true;
}

int projective_irrep_count(const TwistedAlgebra& a) {
  int count = 0;
  // regularity is a class function, so one representative per class suffices
  for (const auto& cls : conjugacy_classes(a.group()))
    if (is_psi_regular(a, cls.front())) ++count;
  return count;
}

int center_dimension_oracle(const TwistedAlgebra& a) {
  const FiniteGroup& g = a.group();
  const int n = g.order();
  if (n > 64) throw Error(ErrorKind::SizeBound, "centre oracle is limited to order 64");
  const double m = static_cast<double>(a.psi().modulus());
  auto zeta = [m](i64 k) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / m); };
  // z = sum a_h e_h commutes with every e_k: for each k and each y, the
  // coefficient of e_y in z e_k - e_k z vanishes.
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (Element k = 0; k < n; ++k) {
    for (Element y = 0; y < n; ++y) {
      const Eigen::Index row = static_cast<Eigen::Index>(k) * n + y;
      const Element left = g.mul(y, g.inv(k));   // e_left e_k = .. e_y
      const Element right = g.mul(g.inv(k), y);  // e_k e_right = .. e_y
      sys(row, left) += zeta(a.psi()({left, k}));
      sys(row, right) -= zeta(a.psi()({k, right}));
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys);
  const auto& sv = svd.singularValues();
  int nullity = n - static_cast<int>(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < 1e-9) ++nullity;
  return nullity;
}

bool is_nondegenerate(const TwistedAlgebra& a) { return projective_irrep_count(a) == 1; }

}  // namespace tdmc
