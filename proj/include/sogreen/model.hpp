#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "sogreen/error.hpp"

namespace sogreen {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Variant { Rashba, Dresselhaus };

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view text);

enum class UnitSystem { SI, Gaussian };

std::string_view to_string(UnitSystem u) noexcept;
UnitSystem parse_unit_system(std::string_view text);

// Physical Hamiltonian parameters in a consistent unit system. The
// fundamental constants default to CODATA 2018 values for `units`.
struct PhysicalParams {
  UnitSystem units = UnitSystem::SI;
  double effective_mass = 0.0;     // m*
  double rashba_alpha = 0.0;       // alpha_R, energy x length
  double dresselhaus_alpha = 0.0;  // alpha_D, energy x length
  double g_factor = 0.0;           // g*
  double field = 0.0;              // B (tesla or gauss)
  double electron_mass = 0.0;
  double hbar = 0.0;
  double charge = 0.0;             // |e|
  double light_speed = 0.0;        // only used by the Gaussian system

  static PhysicalParams with_constants(UnitSystem units);
  void validate() const;
};

// Dimensionless parameters of H_J = K^2 + 2 kappa U_J + gamma b sigma_z.
struct ModelParams {
  Variant variant = Variant::Rashba;
  double kappa = 0.0;
  double b = 0.0;
  double gamma = 0.0;

  void validate() const;
  bool magnetic() const noexcept { return b != 0.0; }
};

struct Conversion {
  ModelParams params;
  double energy_scale;   // hbar^2 / (2 m*): physical energy = energy_scale * z
  double flux_quantum;   // Phi_0 in the chosen unit system
};

Conversion dimensionless_from_physical(const PhysicalParams& p, Variant variant);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) noexcept { return std::hypot(p.x, p.y); }

// r ^ r' = x y' - y x'
inline double wedge(Point2 r, Point2 rp) noexcept { return r.x * rp.y - r.y * rp.x; }

// Which side of the cut (-inf, 0] a square root is taken on when its
// argument lies exactly on it.
enum class CutSide { Reject, Upper };

// Principal square root; on the cut either rejects or returns i*sqrt(|w|).
Complex principal_sqrt(Complex w, CutSide side = CutSide::Reject);

double beta(const ModelParams& p);
Complex eta(const ModelParams& p, Complex z, CutSide side = CutSide::Reject);

// zeta^{sign}_J(field_sign * b) with eta computed on `side`.
Complex zeta(const ModelParams& p, Complex z, int sign, int field_sign,
             CutSide side = CutSide::Reject);

} // namespace sogreen
