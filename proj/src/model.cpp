#include "sogreen/model.hpp"

#include <cmath>
#include <string>

namespace sogreen {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::InvalidParameter: return "invalid-parameter";
  case ErrorKind::Unsupported: return "unsupported-parameter";
  case ErrorKind::WrongCase: return "wrong-case";
  case ErrorKind::BranchCut: return "branch-cut";
  case ErrorKind::Pole: return "pole";
  case ErrorKind::Spectrum: return "spectrum";
  case ErrorKind::Singularity: return "singularity";
  case ErrorKind::Geometry: return "geometry";
  case ErrorKind::Precondition: return "precondition";
  case ErrorKind::InvalidSpectrum: return "invalid-spectrum";
  case ErrorKind::Accuracy: return "accuracy";
  }
  return "unknown";
}

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Rashba ? "R" : "D";
}

Variant parse_variant(std::string_view text) {
  if (text == "R" || text == "r" || text == "rashba" || text == "Rashba") return Variant::Rashba;
  if (text == "D" || text == "d" || text == "dresselhaus" || text == "Dresselhaus")
    return Variant::Dresselhaus;
  throw Error(ErrorKind::InvalidParameter, "unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(UnitSystem u) noexcept {
  return u == UnitSystem::SI ? "SI" : "gaussian";
}

UnitSystem parse_unit_system(std::string_view text) {
  if (text == "SI" || text == "si") return UnitSystem::SI;
  if (text == "gaussian" || text == "Gaussian" || text == "cgs") return UnitSystem::Gaussian;
  throw Error(ErrorKind::InvalidParameter, "unknown unit system '" + std::string(text) + "'");
}

PhysicalParams PhysicalParams::with_constants(UnitSystem units) {
  PhysicalParams p;
  p.units = units;
  if (units == UnitSystem::SI) {
    p.electron_mass = 9.1093837015e-31;
    p.hbar = 1.054571817e-34;
    p.charge = 1.602176634e-19;
    p.light_speed = 299792458.0;
  } else {
    p.electron_mass = 9.1093837015e-28;
    p.hbar = 1.054571817e-27;
    p.charge = 4.803204712570263e-10;
    p.light_speed = 2.99792458e10;
  }
  return p;
}

void PhysicalParams::validate() const {
  const double all[] = {effective_mass, rashba_alpha, dresselhaus_alpha, g_factor, field,
                        electron_mass,  hbar,         charge,            light_speed};
  for (double v : all)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidParameter, "non-finite physical parameter");
  if (effective_mass <= 0 || electron_mass <= 0)
    throw Error(ErrorKind::InvalidParameter, "masses must be positive");
  if (hbar <= 0 || charge == 0)
    throw Error(ErrorKind::InvalidParameter, "hbar and |e| must be positive");
  if (units == UnitSystem::Gaussian && light_speed <= 0)
    throw Error(ErrorKind::InvalidParameter, "c must be positive");
}

void ModelParams::validate() const {
  if (!std::isfinite(kappa) || !std::isfinite(b) || !std::isfinite(gamma))
    throw Error(ErrorKind::InvalidParameter, "kappa, b and gamma must be finite");
}

Conversion dimensionless_from_physical(const PhysicalParams& p, Variant variant) {
  p.validate();
  const double e = std::abs(p.charge);
  const double flux_quantum = p.units == UnitSystem::SI ? 2 * kPi * p.hbar / e
                                                       : 2 * kPi * p.hbar * p.light_speed / e;
  const double alpha = variant == Variant::Rashba ? p.rashba_alpha : p.dresselhaus_alpha;

  Conversion out;
  out.params.variant = variant;
  out.params.kappa = p.effective_mass * alpha / (p.hbar * p.hbar);
  out.params.b = 2 * kPi * p.field / flux_quantum;
  out.params.gamma = -(p.g_factor / 2) * (p.effective_mass / p.electron_mass);
  out.energy_scale = p.hbar * p.hbar / (2 * p.effective_mass);
  out.flux_quantum = flux_quantum;
  out.params.validate();
  return out;
}

Complex principal_sqrt(Complex w, CutSide side) {
  if (w.imag() == 0.0 && w.real() <= 0.0) {
    if (side == CutSide::Reject)
      throw Error(ErrorKind::BranchCut, "square root argument on the cut (-inf, 0]");
    return {0.0, std::sqrt(-w.real())};
  }
  return std::sqrt(w);
}

double beta(const ModelParams& p) {
  p.validate();
  if (p.b == 0.0) return 0.0;
  if (p.kappa == 0.0)
    throw Error(ErrorKind::Unsupported, "beta_J is undefined for kappa = 0 with b != 0");
  const double shift = p.variant == Variant::Rashba ? p.gamma + 1 : p.gamma - 1;
  return shift * p.b / (2 * p.kappa);
}

Complex eta(const ModelParams& p, Complex z, CutSide side) {
  const double bt = beta(p);
  return principal_sqrt(z + p.kappa * p.kappa + bt * bt, side);
}

Complex zeta(const ModelParams& p, Complex z, int sign, int field_sign, CutSide side) {
  const double bt = beta(p);
  const Complex e = eta(p, z, side);
  const Complex shifted = sign > 0 ? e + p.kappa : e - p.kappa;
  const double field = field_sign > 0 ? p.b : -p.b;
  const double zeeman = p.variant == Variant::Rashba ? field : -field;
  return shifted * shifted + zeeman - bt * bt;
}

} // namespace sogreen
