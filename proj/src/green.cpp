#include "sogreen/green.hpp"

#include <cmath>

#include "sogreen/specfun.hpp"
#include "sogreen/spectrum.hpp"

namespace sogreen {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kFourPi = 4 * kPi;

double separation(Point2 r, Point2 rp) {
  if (!std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(rp.x) || !std::isfinite(rp.y))
    throw Error(ErrorKind::InvalidParameter, "non-finite point");
  const double rho = norm(r - rp);
  if (rho < kCoincidenceTol)
    throw Error(ErrorKind::Singularity, "kernel evaluated at coincident points r = r'");
  return rho;
}

void check_z(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidParameter, "non-finite z");
}

// sqrt(-w) for w off [0, inf)
Complex free_root(Complex w) {
  if (w.imag() == 0.0 && w.real() >= 0.0)
    throw Error(ErrorKind::Spectrum, "energy argument inside the continuous spectrum [0, inf)");
  return std::sqrt(-w);
}

struct Jet {
  Complex g, kx, ky;  // kernel and K_x, K_y applied in r

  Jet operator-(const Jet& o) const { return {g - o.g, kx - o.kx, ky - o.ky}; }
  Jet operator+(const Jet& o) const { return {g + o.g, kx + o.kx, ky + o.ky}; }
};

void check_field(double b) {
  if (!std::isfinite(b)) throw Error(ErrorKind::InvalidParameter, "b must be finite");
  if (b == 0.0) throw Error(ErrorKind::WrongCase, "Landau kernel requires b != 0");
}

struct LandauArgs {
  double ab;
  double x;      // |b| rho^2 / 2
  Complex phase;
  double gauss;  // exp(-x/2)
  Complex a;     // 1/2 - w/(2|b|)
};

LandauArgs landau_args(double b, Point2 r, Point2 rp, Complex w) {
  check_field(b);
  check_z(w);
  const double rho = separation(r, rp);
  LandauArgs out;
  out.ab = std::abs(b);
  out.x = 0.5 * out.ab * rho * rho;
  out.phase = std::exp(-0.5 * kI * b * wedge(r, rp));
  out.gauss = std::exp(-0.5 * out.x);
  out.a = 0.5 - w / (2 * out.ab);
  return out;
}

Complex landau_g0(double b, Point2 r, Point2 rp, Complex w) {
  const auto la = landau_args(b, r, rp, w);
  return la.phase * la.gauss * tricomi_psi_scaled(la.a, 1, la.x) / kFourPi;
}

Complex landau_f0(double b, Point2 r, Point2 rp, Complex w) {
  const auto la = landau_args(b, r, rp, w);
  return -la.phase * la.gauss * tricomi_psi_scaled(la.a + 1.0, 2, la.x) / kFourPi;
}

// G0 = e^{i phi} f(rho^2), differentiated by the product rule; f' uses
// d/dx [Gamma(a) Psi(a,1,x)] = -Gamma(a+1) Psi(a+1,2,x).
Jet landau_jet(double b, Point2 r, Point2 rp, Complex w) {
  const auto la = landau_args(b, r, rp, w);
  const Complex w1 = tricomi_psi_scaled(la.a, 1, la.x);
  const Complex w2 = tricomi_psi_scaled(la.a + 1.0, 2, la.x);
  const Complex f = la.gauss * w1 / kFourPi;
  const Complex fs = la.gauss * (-0.25 * la.ab * w1 - 0.5 * la.ab * w2) / kFourPi;  // df/d(rho^2)
  const Point2 d = r - rp;
  const Complex g = la.phase * f;
  const double dphi_x = -0.5 * b * rp.y;
  const double dphi_y = 0.5 * b * rp.x;
  const Complex dgx = kI * dphi_x * g + la.phase * 2.0 * d.x * fs;
  const Complex dgy = kI * dphi_y * g + la.phase * 2.0 * d.y * fs;
  return {g, -kI * dgx + 0.5 * b * r.y * g, -kI * dgy - 0.5 * b * r.x * g};
}

Jet free_jet(Point2 r, Point2 rp, Complex w) {
  const double rho = separation(r, rp);
  const Complex alpha = free_root(w);
  const auto k = bessel_k01(alpha * rho);
  const Point2 d = r - rp;
  const Complex g = k.k0 / (2 * kPi);
  const Complex radial = -alpha * k.k1 / (2 * kPi * rho);  // dG/drho / rho
  return {g, -kI * d.x * radial, -kI * d.y * radial};
}

SpinKernel assemble(const ModelParams& p, double bt, Complex e, const Jet& d1, const Jet& s1,
                    const Jet& d2, const Jet& s2) {
  SpinKernel k;
  const Complex inv = 1.0 / (2.0 * e);
  k.g11 = (bt - p.kappa) * d1.g * inv + 0.5 * s1.g;
  k.g22 = (-bt - p.kappa) * d2.g * inv + 0.5 * s2.g;
  if (p.variant == Variant::Rashba) {
    k.g12 = (d2.ky + kI * d2.kx) * inv;
    k.g21 = (d1.ky - kI * d1.kx) * inv;
  } else {
    k.g12 = (-d2.kx - kI * d2.ky) * inv;
    k.g21 = (-d1.kx + kI * d1.ky) * inv;
  }
  return k;
}

void check_landau_pole(double b, Complex w, const char* what, int shift) {
  int n = 0;
  if (distance_to_landau_levels(b, w - 2.0 * shift * std::abs(b), &n) <= kPoleTol)
    throw PoleError(std::string(what) + ": z at a Landau level", w, n + shift);
}

SpinKernel zeeman_split(const KernelRequest& req) {
  const auto& p = req.params;
  return {green0_landau(p.b, req.r, req.r_prime, req.z - p.gamma * p.b), 0.0, 0.0,
          green0_landau(p.b, req.r, req.r_prime, req.z + p.gamma * p.b)};
}

Complex entrywise_g12(const ModelParams& p, Point2 r, Point2 rp, Complex z, EntrywiseForm form) {
  const Complex e = eta(p, z, CutSide::Upper);
  const Complex zm = zeta(p, z, -1, -1, CutSide::Upper);
  const Complex zp = zeta(p, z, +1, -1, CutSide::Upper);
  const Complex dg = landau_g0(p.b, r, rp, zm) - landau_g0(p.b, r, rp, zp);
  const Complex df = landau_f0(p.b, r, rp, zm) - landau_f0(p.b, r, rp, zp);
  const double ab = std::abs(p.b);
  const double sb = p.b > 0 ? 1.0 : -1.0;
  const Point2 d = r - rp;
  const bool rashba = p.variant == Variant::Rashba;
  const Complex dir = rashba ? Complex(d.x, -d.y) : Complex(d.y, -d.x);
  if (form == EntrywiseForm::Published) {
    return rashba ? ab * dir * (0.5 * (sb - 1) * dg + df)
                  : ab * dir * (0.5 * (sb + 1) * dg - df);
  }
  const Complex inner = rashba ? -0.5 * (1 + sb) * dg + df : 0.5 * (1 - sb) * dg - df;
  return ab * dir * inner / (2.0 * e);
}

} // namespace

Complex green0_free(Point2 r, Point2 rp, Complex z) {
  check_z(z);
  const double rho = separation(r, rp);
  return bessel_k0(free_root(z) * rho) / (2 * kPi);
}

SpinKernel green_free(const KernelRequest& req) {
  const auto& p = req.params;
  p.validate();
  check_z(req.z);
  if (p.b != 0.0) throw Error(ErrorKind::WrongCase, "green_free requires b = 0");
  const double rho = separation(req.r, req.r_prime);
  const double k2 = p.kappa * p.kappa;
  if (req.z.imag() == 0.0 && req.z.real() >= -k2)
    throw Error(ErrorKind::Spectrum, "z inside the continuous spectrum [-kappa^2, inf)");

  const Complex s = std::sqrt(-(req.z + k2));
  const Complex zp = s + kI * p.kappa;
  const Complex zm = s - kI * p.kappa;
  const auto kp = bessel_k01(zp * rho);
  const auto km = bessel_k01(zm * rho);
  const Point2 d = req.r - req.r_prime;

  SpinKernel k;
  k.g11 = (-p.kappa / (kI * s) * (kp.k0 - km.k0) + kp.k0 + km.k0) / kFourPi;
  k.g22 = k.g11;
  const Complex bracket = zp * kp.k1 - zm * km.k1;
  const Complex pre = bracket / (kFourPi * kI * s * rho);
  if (p.variant == Variant::Rashba) {
    k.g12 = Complex(-d.x, d.y) * pre;
    k.g21 = Complex(d.x, d.y) * pre;
  } else {
    k.g12 = Complex(d.y, -d.x) * pre;
    k.g21 = -Complex(d.y, d.x) * pre;
  }
  return k;
}

SpinKernel green_free_operator_form(const KernelRequest& req) {
  const auto& p = req.params;
  p.validate();
  check_z(req.z);
  if (p.b != 0.0) throw Error(ErrorKind::WrongCase, "green_free_operator_form requires b = 0");
  const double k2 = p.kappa * p.kappa;
  if (req.z.imag() == 0.0 && req.z.real() >= -k2)
    throw Error(ErrorKind::Spectrum, "z inside the continuous spectrum [-kappa^2, inf)");
  const Complex e = eta(p, req.z, CutSide::Upper);
  const Jet m = free_jet(req.r, req.r_prime, (e - p.kappa) * (e - p.kappa));
  const Jet pl = free_jet(req.r, req.r_prime, (e + p.kappa) * (e + p.kappa));
  const Jet d = m - pl;
  const Jet s = m + pl;
  return assemble(p, 0.0, e, d, s, d, s);
}

Complex green0_landau(double b, Point2 r, Point2 rp, Complex z) {
  check_field(b);
  check_z(z);
  check_landau_pole(b, z, "green0_landau", 0);
  return landau_g0(b, r, rp, z);
}

Complex f0_landau(double b, Point2 r, Point2 rp, Complex z) {
  check_field(b);
  check_z(z);
  check_landau_pole(b, z, "f0_landau", 1);
  return landau_f0(b, r, rp, z);
}

namespace detail {

SpinKernel green_magnetic_unchecked(const KernelRequest& req) {
  const auto& p = req.params;
  p.validate();
  check_z(req.z);
  check_field(p.b);
  separation(req.r, req.r_prime);
  if (p.kappa == 0.0) return zeeman_split(req);

  const double bt = beta(p);
  const Complex e = eta(p, req.z, CutSide::Upper);
  const Jet up_m = landau_jet(p.b, req.r, req.r_prime, zeta(p, req.z, -1, +1, CutSide::Upper));
  const Jet up_p = landau_jet(p.b, req.r, req.r_prime, zeta(p, req.z, +1, +1, CutSide::Upper));
  const Jet dn_m = landau_jet(p.b, req.r, req.r_prime, zeta(p, req.z, -1, -1, CutSide::Upper));
  const Jet dn_p = landau_jet(p.b, req.r, req.r_prime, zeta(p, req.z, +1, -1, CutSide::Upper));
  return assemble(p, bt, e, up_m - up_p, up_m + up_p, dn_m - dn_p, dn_m + dn_p);
}

} // namespace detail

SpinKernel green_magnetic(const KernelRequest& req) {
  const auto& p = req.params;
  p.validate();
  check_z(req.z);
  check_field(p.b);
  if (p.kappa == 0.0) return zeeman_split(req);
  if (distance_to_spin_orbit_levels(p, req.z) <= kPoleTol)
    throw PoleError("green_magnetic: z at a spin-orbit level", req.z);
  return detail::green_magnetic_unchecked(req);
}

SpinKernel green_magnetic_entrywise(const KernelRequest& req, EntrywiseForm form) {
  const auto& p = req.params;
  p.validate();
  check_z(req.z);
  check_field(p.b);
  if (p.kappa == 0.0)
    throw Error(ErrorKind::Unsupported, "entrywise forms need kappa != 0");
  if (distance_to_spin_orbit_levels(p, req.z) <= kPoleTol)
    throw PoleError("green_magnetic_entrywise: z at a spin-orbit level", req.z);

  const double bt = beta(p);
  const Complex e = eta(p, req.z, CutSide::Upper);
  const auto g0 = [&](int sign, int field) {
    return landau_g0(p.b, req.r, req.r_prime, zeta(p, req.z, sign, field, CutSide::Upper));
  };
  const Complex um = g0(-1, +1), up = g0(+1, +1), dm = g0(-1, -1), dp = g0(+1, -1);

  SpinKernel k;
  k.g11 = (bt - p.kappa) / (2.0 * e) * (um - up) + 0.5 * (um + up);
  k.g22 = -(bt + p.kappa) / (2.0 * e) * (dm - dp) + 0.5 * (dm + dp);
  k.g12 = entrywise_g12(p, req.r, req.r_prime, req.z, form);
  k.g21 = std::conj(entrywise_g12(p, req.r_prime, req.r, std::conj(req.z), form));
  return k;
}

SpinKernel green(const KernelRequest& req) {
  return req.params.b == 0.0 ? green_free(req) : green_magnetic(req);
}

} // namespace sogreen
