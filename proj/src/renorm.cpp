#include "sogreen/renorm.hpp"

#include <cmath>

#include "sogreen/green.hpp"
#include "sogreen/specfun.hpp"
#include "sogreen/spectrum.hpp"

namespace sogreen {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kPsi1 = -0.57721566490153286060651209008240243;

void check_z(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidParameter, "non-finite z");
}

void check_free(const ModelParams& p, Complex z) {
  p.validate();
  check_z(z);
  if (p.b != 0.0) throw Error(ErrorKind::WrongCase, "free renormalized value requires b = 0");
  if (z.imag() == 0.0 && z.real() >= -p.kappa * p.kappa)
    throw Error(ErrorKind::Spectrum, "z inside the continuous spectrum [-kappa^2, inf)");
}

// Q expressed through the root w = sqrt(-z).
Complex q_from_root(Complex w) {
  return (kPsi1 + std::log(2.0) - std::log(w)) / (2 * kPi);
}

} // namespace

double singular_part(Point2 r, Point2 rp) {
  const double rho = norm(r - rp);
  if (rho < kCoincidenceTol)
    throw Error(ErrorKind::Singularity, "singular part evaluated at coincident points");
  return -std::log(rho) / (2 * kPi);
}

Complex q_free(Complex z) {
  check_z(z);
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw Error(ErrorKind::BranchCut, "q_free: z on [0, inf)");
  return (kPsi1 - 0.5 * std::log(-z) + std::log(2.0)) / (2 * kPi);
}

RenormValue green_ren_free(const ModelParams& p, Complex z) {
  check_free(p, z);
  const Complex s = std::sqrt(-(z + p.kappa * p.kappa));
  Complex value = kPsi1 - 0.5 * std::log(-z / 4.0);
  if (p.kappa != 0.0) {
    const Complex ratio = (s + kI * p.kappa) / (s - kI * p.kappa);
    if (ratio.imag() == 0.0 && ratio.real() <= 0.0)
      throw Error(ErrorKind::BranchCut, "green_ren_free: logarithm argument on the cut");
    value += p.kappa / (2.0 * kI * s) * std::log(ratio);
  }
  value /= 2 * kPi;
  return {value, value};
}

RenormValue green_ren_free_q_form(const ModelParams& p, Complex z) {
  check_free(p, z);
  const Complex s = std::sqrt(-(z + p.kappa * p.kappa));
  const Complex qp = q_from_root(s + kI * p.kappa);
  const Complex qm = q_from_root(s - kI * p.kappa);
  const Complex value = -p.kappa / (2.0 * kI * s) * (qp - qm) + 0.5 * (qp + qm);
  return {value, value};
}

Complex q_landau(double b, Complex z) {
  check_z(z);
  if (!std::isfinite(b)) throw Error(ErrorKind::InvalidParameter, "b must be finite");
  if (b == 0.0) throw Error(ErrorKind::WrongCase, "q_landau requires b != 0");
  int n = 0;
  if (distance_to_landau_levels(b, z, &n) <= kPoleTol)
    throw PoleError("q_landau: z at a Landau level", z, n);
  const double ab = std::abs(b);
  return -(digamma(0.5 - z / (2 * ab)) - 2 * kPsi1 + std::log(ab / 2)) / (4 * kPi);
}

RenormValue green_ren_magnetic(const ModelParams& p, Complex z) {
  p.validate();
  check_z(z);
  if (p.b == 0.0) throw Error(ErrorKind::WrongCase, "green_ren_magnetic requires b != 0");
  if (p.kappa == 0.0)
    return {q_landau(p.b, z - p.gamma * p.b), q_landau(p.b, z + p.gamma * p.b)};
  if (distance_to_spin_orbit_levels(p, z) <= kPoleTol)
    throw PoleError("green_ren_magnetic: z at a spin-orbit level", z);

  const double bt = beta(p);
  const Complex e = eta(p, z, CutSide::Upper);
  const auto q = [&](int sign, int field) {
    return q_landau(p.b, zeta(p, z, sign, field, CutSide::Upper));
  };
  const Complex um = q(-1, +1), up = q(+1, +1), dm = q(-1, -1), dp = q(+1, -1);
  return {(bt - p.kappa) / (2.0 * e) * (um - up) + 0.5 * (um + up),
          (-bt - p.kappa) / (2.0 * e) * (dm - dp) + 0.5 * (dm + dp)};
}

RenormValue green_ren(const ModelParams& p, Complex z) {
  return p.b == 0.0 ? green_ren_free(p, z) : green_ren_magnetic(p, z);
}

} // namespace sogreen
