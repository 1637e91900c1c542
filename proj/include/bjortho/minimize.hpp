#ifndef BJORTHO_MINIMIZE_HPP_
#define BJORTHO_MINIMIZE_HPP_

#include <cmath>
#include <complex>
#include <utility>

namespace bjortho {

template <typename Real>
struct ScalarMin {
  Real arg;
  Real value;
};

// Golden-section search for a convex (unimodal) f on [lo, hi]. Terminates
// once the bracket is narrower than abs_tol, or stops shrinking in floating
// point (huge brackets). Endpoints are compared against
// the interior estimate, so minima sitting on the boundary are returned
// exactly.
template <typename Real, typename F>
ScalarMin<Real> golden_section(F&& f, Real lo, Real hi, Real abs_tol) {
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real a = lo, b = hi;
  Real c = b - inv_phi * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = f(c), fd = f(d);
  for (int it = 0; it < 2000 && b - a > abs_tol; ++it) {
    const Real width = b - a;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (!(b - a < width)) break;
  }
  ScalarMin<Real> best{c, fc};
  if (fd < best.value) best = {d, fd};
  const Real fm = f((a + b) / 2);
  if (fm < best.value) best = {(a + b) / 2, fm};
  const Real flo = f(lo);
  if (flo <= best.value) best = {lo, flo};
  const Real fhi = f(hi);
  if (fhi < best.value) best = {hi, fhi};
  return best;
}

template <typename Real>
struct ComplexMin {
  std::complex<Real> arg;
  Real value;
};

// Minimizes a convex f over the square |Re z|, |Im z| <= radius by nested
// golden sections: g(a) = min_b f(a + ib) is again convex.
template <typename Real, typename F>
ComplexMin<Real> nested_golden_2d(F&& f, Real radius, Real abs_tol) {
  Real best_im = 0;
  auto inner = [&](Real re) {
    auto row = [&](Real im) { return f(std::complex<Real>(re, im)); };
    const ScalarMin<Real> m = golden_section<Real>(row, -radius, radius, abs_tol);
    best_im = m.arg;
    return m.value;
  };
  const ScalarMin<Real> outer = golden_section<Real>(inner, -radius, radius, abs_tol);
  const Real v = inner(outer.arg);
  ComplexMin<Real> out{{outer.arg, best_im}, v};
  // The origin is always feasible; make sure a boundary-free minimum at zero
  // is not lost to bracket rounding.
  const Real f0 = f(std::complex<Real>(0, 0));
  if (f0 <= out.value) out = {{0, 0}, f0};
  return out;
}

}  // namespace bjortho

#endif  // BJORTHO_MINIMIZE_HPP_
