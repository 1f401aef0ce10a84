#pragma once

#include "sogreen/model.hpp"

namespace sogreen {

struct SpinKernel {
  Complex g11, g12, g21, g22;
};

struct KernelRequest {
  ModelParams params;
  Point2 r;
  Point2 r_prime;
  Complex z;
};

// Kernel evaluation refuses |r - r'| below this (the diagonal belongs to renorm).
inline constexpr double kCoincidenceTol = 1e-12;
// Minimal distance of z from the spectrum.
inline constexpr double kPoleTol = 1e-10;

// (1/2pi) K_0(sqrt(-z) |r - r'|)
Complex green0_free(Point2 r, Point2 rp, Complex z);

// Closed entrywise forms with zeta^+- = sqrt(-(z + kappa^2)) +- i kappa.
SpinKernel green_free(const KernelRequest& req);

// (U + beta sigma_z - kappa)/(2 eta) [G0((eta-kappa)^2) - G0((eta+kappa)^2)] + average,
// with U applied to the Bessel kernel analytically.
SpinKernel green_free_operator_form(const KernelRequest& req);

// Resolvent kernel of the scalar Landau Hamiltonian. Gauge a = (-b y/2, b x/2),
// phase exp(-i b (r ^ r')/2).
Complex green0_landau(double b, Point2 r, Point2 rp, Complex z);

// Companion kernel carrying Psi(3/2 - z/2|b|, 2; .), same phase.
Complex f0_landau(double b, Point2 r, Point2 rp, Complex z);

// Operator form: (U + beta sigma_z - kappa)/(2 eta) diag(dG0(b), dG0(-b)) + sums/2,
// U acting on the Landau kernels by analytic differentiation. kappa = 0 falls back
// to diag(G0(z - gamma b), G0(z + gamma b)).
SpinKernel green_magnetic(const KernelRequest& req);

// Entrywise closed forms for G11, G22, G12 (G21 through the symmetry
// G21(r, r'; z) = conj G12(r', r; conj z)).
enum class EntrywiseForm {
  Corrected,  // forms consistent with the operator form in the gauge above
  Published,  // G12 with sign factors (sign b -+ 1)/2 and no 1/(2 eta)
};
SpinKernel green_magnetic_entrywise(const KernelRequest& req,
                                    EntrywiseForm form = EntrywiseForm::Corrected);

// Dispatches on b.
SpinKernel green(const KernelRequest& req);

namespace detail {
// green_magnetic without the closed-form spectrum check; used by pole scans so
// that a pole is found only through the kernels themselves.
SpinKernel green_magnetic_unchecked(const KernelRequest& req);
} // namespace detail

} // namespace sogreen
