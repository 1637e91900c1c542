#ifndef BJORTHO_LP_NORM_HPP_
#define BJORTHO_LP_NORM_HPP_

#include "bjortho/core.hpp"

#include <algorithm>
#include <cmath>

namespace bjortho {

// l_p norm of a complex vector expression, scaled by the largest modulus
// so that |x_i|^p never overflows.
template <typename Derived>
typename Derived::RealScalar vector_pnorm(const Eigen::MatrixBase<Derived>& x, const PExponent& p) {
  using Real = typename Derived::RealScalar;
  Real scale = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) scale = std::max<Real>(scale, std::abs(x(i)));
  if (scale == Real(0) || p.is_infinite()) return scale;
  const Real pv = static_cast<Real>(p.value());
  Real sum = 0;
  if (p.is_two()) {
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::norm(x(i) / scale);
    return scale * std::sqrt(sum);
  }
  if (p.is_one()) {
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::abs(x(i));
    return sum;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x(i)) / scale, pv);
  return scale * std::pow(sum, Real(1) / pv);
}

// Sum_i |x_i|^{p-2} conj(x_i) y_i, with the term taken as 0 where x_i = 0.
// Re(alpha s(x, y)) / ||x||^{p-1} is the right derivative of t -> ||x + t alpha y||.
template <typename DerivedX, typename DerivedY>
std::complex<typename DerivedX::RealScalar> semi_inner_product_raw(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y, double p) {
  using Real = typename DerivedX::RealScalar;
  std::complex<Real> s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Real m = std::abs(x(i));
    if (m == Real(0)) continue;
    s += std::pow(m, static_cast<Real>(p - 2)) * std::conj(x(i)) * y(i);
  }
  return s;
}

// Duality map Psi_p(z)_i = |z_i|^{p-1} phase(z_i), the coordinatewise
// gradient of ||z||_p^p / p.
template <typename Derived>
CVectorT<typename Derived::RealScalar> duality_map(const Eigen::MatrixBase<Derived>& z, double p) {
  using Real = typename Derived::RealScalar;
  CVectorT<Real> out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const Real m = std::abs(z(i));
    out(i) = m == Real(0) ? std::complex<Real>(0) : z(i) * std::pow(m, static_cast<Real>(p - 2));
  }
  return out;
}

// Rescales x to unit p-norm in place; returns the previous norm.
template <typename Real>
Real normalize_pnorm(CVectorT<Real>& x, const PExponent& p) {
  const Real n = vector_pnorm(x, p);
  if (n > Real(0)) x /= n;
  return n;
}

}  // namespace bjortho

#endif  // BJORTHO_LP_NORM_HPP_
