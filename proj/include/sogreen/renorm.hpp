#pragma once

#include "sogreen/model.hpp"

// Renormalized on-diagonal Green functions
//   G_ren(r, r; z) = lim_{r' -> r} [G(r, r'; z) + (1/2pi) log|r - r'|].
// The off-diagonal entries vanish in the limit, so only the diagonal is kept.
namespace sogreen {

struct RenormValue {
  Complex diag_up;
  Complex diag_down;
};

// Subtracted singularity: -(1/2pi) log|r - r'| (multiplies sigma_0).
double singular_part(Point2 r, Point2 rp);

// lim (1/2pi)(K_0(sqrt(-z) r) + log r) = (1/2pi)(psi(1) - log(-z)/2 + log 2)
Complex q_free(Complex z);

// Closed form with the logarithm of (s + i kappa)/(s - i kappa), s = sqrt(-(z + kappa^2)).
RenormValue green_ren_free(const ModelParams& p, Complex z);

// The same value assembled from Q at the Bessel roots zeta^+- = s +- i kappa.
RenormValue green_ren_free_q_form(const ModelParams& p, Complex z);

// lim (G_0 + (1/2pi) log|r - r'|) = -(1/4pi)(psi(1/2 - z/2|b|) - 2 psi(1) + log(|b|/2))
Complex q_landau(double b, Complex z);

RenormValue green_ren_magnetic(const ModelParams& p, Complex z);

// Dispatches on b.
RenormValue green_ren(const ModelParams& p, Complex z);

} // namespace sogreen
