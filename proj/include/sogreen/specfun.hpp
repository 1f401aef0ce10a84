#pragma once

#include <optional>

#include "sogreen/model.hpp"

// Complex special functions used by the Green-function kernels.
//
// All functions are pure and thread-safe. Domain violations throw
// sogreen::Error (PoleError at Gamma/digamma poles); series that fail to
// converge throw AccuracyError carrying the tolerance actually reached.
namespace sogreen {

struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;

  void validate() const;
};

struct BesselK01 {
  Complex k0;
  Complex k1;
};

// Modified Bessel functions of the second kind (McDonald functions),
// principal branch, |arg w| < pi.
Complex bessel_k0(Complex w);
Complex bessel_k1(Complex w);
BesselK01 bessel_k01(Complex w);

Complex gamma_fn(Complex a);
// A logarithm of Gamma(a) (not necessarily the principal one); exp() of it is Gamma(a).
Complex log_gamma(Complex a);
// 1/Gamma(a), entire; zero at the non-positive integers.
Complex rgamma(Complex a);
Complex digamma(Complex a);
// (a)_r = a (a+1) ... (a+r-1), computed as a product.
Complex pochhammer(Complex a, int r);

// Kummer Phi(a, c, x) = sum_r (a)_r / ((c)_r r!) x^r, c a positive integer, x >= 0.
Complex kummer_phi(Complex a, int c, double x, const SeriesControl& ctl = {});

// Tricomi Psi(a, c, x) for c in {1, 2} and x > 0.
Complex tricomi_psi(Complex a, int c, double x, const SeriesControl& ctl = {});

// Gamma(a) Psi(a, c, x), the combination appearing in the Landau kernel. It
// contains no Gamma factor in its small-x expansion and stays finite for large
// |a| where Gamma(a) alone overflows. Poles at a = 0, -1, -2, ...
Complex tricomi_psi_scaled(Complex a, int c, double x, const SeriesControl& ctl = {});

namespace detail {

BesselK01 bessel_k01_series(Complex w);
BesselK01 bessel_k01_continued_fraction(Complex w);

enum class PsiRegime { Series, Asymptotic, Ode };

struct SeriesResult {
  Complex scaled;      // Gamma(a) Psi(a, c, x)
  Complex unscaled;    // Psi(a, c, x)
  double rel_error;    // round-off estimate relative to |scaled|
};

// Logarithmic expansion around x = 0; requires a not a non-positive integer.
SeriesResult tricomi_series(Complex a, int c, double x, const SeriesControl& ctl);

// Psi(a, c, x) = exp(log_prefactor) * value
struct LargeXResult {
  Complex value;
  Complex log_prefactor;
};

// Asymptotic expansion in 1/x; empty when the smallest term exceeds tolerance.
std::optional<LargeXResult> tricomi_asymptotic(Complex a, int c, double x, double tol);

// Taylor-stepping integration of Kummer's equation inward from a point where
// the asymptotic expansion has converged.
LargeXResult tricomi_ode(Complex a, int c, double x, double tol);

PsiRegime tricomi_regime(Complex a, int c, double x, const SeriesControl& ctl);

} // namespace detail

} // namespace sogreen
