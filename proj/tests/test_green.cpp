#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "check.hpp"
#include "sogreen/green.hpp"
#include "sogreen/specfun.hpp"
#include "sogreen/spectrum.hpp"
#include "sogreen/verify.hpp"

using namespace sogreen;

namespace {

using Mat = std::array<Complex, 4>;  // g11, g12, g21, g22

Mat as_mat(const SpinKernel& k) { return {k.g11, k.g12, k.g21, k.g22}; }

double max_diff(const SpinKernel& a, const SpinKernel& b) {
  const Mat x = as_mat(a), y = as_mat(b);
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double max_abs(const SpinKernel& a) {
  double m = 0;
  for (Complex c : as_mat(a)) m = std::max(m, std::abs(c));
  return m;
}

double fd_ratio(const ModelParams& p, Complex z, Point2 rp, Point2 r, double h) {
  ColumnKernel col = [&](Point2 s) { return green({p, s, rp, z}); };
  const double r1 = apply_hamiltonian_fd(p, col, z, r, h, rp).residual_max;
  const double r2 = apply_hamiltonian_fd(p, col, z, r, h / 2, rp).residual_max;
  return r1 / r2;
}

} // namespace

TEST_SUITE("green") {

TEST_CASE("free scalar kernel") {
  const double k0_1 = 0.42102443824070834;
  CHECK(check::rel(green0_free({1, 0}, {0, 0}, -1.0), k0_1 / (2 * kPi)) < 1e-14);
  CHECK(check::rel(green0_free({0.3, 0.4}, {0, 0}, -4.0), k0_1 / (2 * kPi)) < 1e-14);
  // translation and rotation
  const Complex z(-0.6, 0.9);
  const Complex g = green0_free({0.5, 0}, {0, 0}, z);
  CHECK(check::rel(green0_free({1.3, -0.4}, {1.3 - 0.3, -0.4 - 0.4}, z), g) < 1e-14);

  try {
    green0_free({1, 1}, {1, 1}, -1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singularity);
  }
  try {
    green0_free({1, 0}, {0, 0}, 2.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Spectrum);
  }
}

TEST_CASE("free spin kernel reduces at kappa = 0") {
  const Complex z(-1.1, 0.3);
  for (auto v : {Variant::Rashba, Variant::Dresselhaus}) {
    const auto k = green_free({{v, 0, 0, 0.7}, {0.4, -0.2}, {0, 0}, z});
    CHECK(k.g12 == Complex(0.0));
    CHECK(k.g21 == Complex(0.0));
    CHECK(check::rel(k.g11, green0_free({0.4, -0.2}, {0, 0}, z)) < 1e-14);
    CHECK(k.g11 == k.g22);
  }
}

TEST_CASE("free spin kernel: entrywise against operator form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.5, 1.5), k(0.1, 1.5), im(0.05, 1.5);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p{i % 2 ? Variant::Rashba : Variant::Dresselhaus, k(rng), 0, u(rng)};
    const KernelRequest req{p, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng) * 2, im(rng)}};
    const auto a = green_free(req), b = green_free_operator_form(req);
    CHECK(max_diff(a, b) < 1e-12 * std::max(1.0, max_abs(a)));
    CHECK(a.g11 == a.g22);
  }
}

TEST_CASE("free spin kernel outside the spectrum only") {
  const ModelParams p{Variant::Rashba, 1, 0, 0};
  try {
    green_free({p, {1, 0}, {0, 0}, -0.5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Spectrum);
  }
  CHECK_NOTHROW(green_free({p, {1, 0}, {0, 0}, -1.5}));
  CHECK_THROWS_AS(green_free({{Variant::Rashba, 1, 1, 0}, {1, 0}, {0, 0}, -1.5}), Error);
}

TEST_CASE("finite-difference order of the resolvent equation") {
  SUBCASE("free rashba") {
    const ModelParams p{Variant::Rashba, 0.4, 0, 0};
    const double q = fd_ratio(p, {-2, 0.5}, {0, 0}, {0.8, 0.3}, 1e-2);
    CHECK(q > 3.6);
    CHECK(q < 4.4);
  }
  SUBCASE("free scalar") {
    const ModelParams p{Variant::Dresselhaus, 0, 0, 0};
    const double q = fd_ratio(p, {-1, 0.2}, {0, 0}, {0.6, -0.5}, 1e-2);
    CHECK(q == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("magnetic rashba") {
    const ModelParams p{Variant::Rashba, 1, 1, 0};
    const double q = fd_ratio(p, {-1, 1}, {0.1, -0.2}, {0.9, 0.1}, 1e-2);
    CHECK(q > 3.6);
    CHECK(q < 4.4);
  }
  SUBCASE("magnetic dresselhaus, negative field") {
    const ModelParams p{Variant::Dresselhaus, 0.7, -1.3, 0.4};
    const double q = fd_ratio(p, {0.5, 0.7}, {0.3, 0.2}, {-0.4, 0.6}, 1e-2);
    CHECK(q > 3.6);
    CHECK(q < 4.4);
  }
  SUBCASE("magnetic without spin-orbit coupling") {
    const ModelParams p{Variant::Rashba, 0, 0.8, 0.6};
    const double q = fd_ratio(p, {1.0, 0.4}, {0, 0}, {0.7, 0.4}, 1e-2);
    CHECK(q > 3.6);
    CHECK(q < 4.4);
  }
}

TEST_CASE("stencil near the singular point is refused") {
  const ModelParams p{Variant::Rashba, 0.4, 0, 0};
  ColumnKernel col = [&](Point2 s) { return green({p, s, {0, 0}, {-1, 0}}); };
  try {
    apply_hamiltonian_fd(p, col, {-1, 0}, {0.05, 0}, 1e-2, {0, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Geometry);
  }
  CHECK_THROWS_AS(apply_hamiltonian_fd(p, col, {-1, 0}, {1, 0}, 0.5, {0, 0}), Error);
}

TEST_CASE("landau kernel") {
  // |G0(r, r')| = |G0(r', r)|, phases conjugate
  const Point2 r{0.4, -0.3}, rp{-0.2, 0.5};
  const Complex z(-0.4, 0.3);
  const Complex a = green0_landau(1.2, r, rp, z), b = green0_landau(1.2, rp, r, z);
  CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-15);

  // weak field
  const Complex weak = green0_landau(1e-3, {1, 0}, {0, 0}, -1.0);
  CHECK(std::abs(weak - green0_free({1, 0}, {0, 0}, -1.0)) < 1e-3);

  try {
    green0_landau(2.0, r, rp, 6.0);
    FAIL("expected an error");
  } catch (const PoleError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("companion kernel") {
  const double b = 1;
  // derivative of the Psi(., 1; x) factor reproduces the Psi(., 2; x) factor
  const Complex z(-0.7, 0.0);
  const double rho = 1, x = b * rho * rho / 2, h = 1e-5;
  auto w1 = [&](double xx) {
    const double r = std::sqrt(2 * xx / b);
    return 4 * kPi * std::exp(xx / 2) * green0_landau(b, {r, 0}, {0, 0}, z);
  };
  const Complex fd = (w1(x + h) - w1(x - h)) / (2 * h);
  const Complex want = 4 * kPi * std::exp(x / 2) * f0_landau(b, {rho, 0}, {0, 0}, z);
  CHECK(check::rel(fd, want) < 1e-6);

  // at z = |b| the prefactor z/2|b| - 1/2 vanishes against the Gamma pole:
  // F0 = -(1/4pi) e^{-x/2} / x there
  const Complex at = f0_landau(b, {rho, 0}, {0, 0}, 1.0);
  CHECK(check::rel(at, -std::exp(-x / 2) / (4 * kPi * x)) < 1e-12);

  const Complex zc(0.3, 0.8);
  CHECK(check::rel(f0_landau(b, {0.7, 0.2}, {0, 0}, std::conj(zc)),
                   std::conj(f0_landau(b, {0.7, 0.2}, {0, 0}, zc))) < 1e-13);
}

TEST_CASE("hermitian symmetry across points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2), k(0.2, 1.5), bb(0.3, 2.0), im(0.1, 1.5);
  for (int i = 0; i < 40; ++i) {
    const double b = i % 3 == 0 ? 0.0 : (i % 2 ? 1 : -1) * bb(rng);
    const ModelParams p{i % 2 ? Variant::Rashba : Variant::Dresselhaus, k(rng), b, u(rng)};
    const Point2 r{u(rng), u(rng)}, rp{u(rng), u(rng)};
    const Complex z(u(rng) * 3, im(rng));
    const auto a = green({p, r, rp, z});
    const auto c = green({p, rp, r, std::conj(z)});
    const double scale = std::max(1.0, max_abs(a));
    CHECK(std::abs(a.g21 - std::conj(c.g12)) < 1e-12 * scale);
    CHECK(std::abs(a.g11 - std::conj(c.g11)) < 1e-12 * scale);
    CHECK(std::abs(a.g22 - std::conj(c.g22)) < 1e-12 * scale);
  }
}

TEST_CASE("magnetic kernel: small kappa approaches the decoupled kernel") {
  const double beta_fixed = 0.8, b = 1.0, kap = 1e-6;
  for (auto v : {Variant::Rashba, Variant::Dresselhaus}) {
    const double sgn = v == Variant::Rashba ? 1 : -1;
    // beta = (gamma + sgn) b / (2 kappa)
    const double gamma = 2 * kap * beta_fixed / b - sgn;
    const KernelRequest req{{v, kap, b, gamma}, {0.6, 0.2}, {-0.1, 0.3}, {-0.5, 0.4}};
    const auto k = green_magnetic(req);
    KernelRequest dec = req;
    dec.params.kappa = 0;
    const auto d = green_magnetic(dec);
    CHECK(d.g12 == Complex(0.0));
    CHECK(check::rel(d.g11, green0_landau(b, req.r, req.r_prime, req.z - gamma * b)) < 1e-14);
    CHECK(check::rel(d.g22, green0_landau(b, req.r, req.r_prime, req.z + gamma * b)) < 1e-14);
    CHECK(max_diff(k, d) < 1e-4);
  }
}

TEST_CASE("magnetic kernel: weak field approaches the free kernel") {
  for (auto v : {Variant::Rashba, Variant::Dresselhaus}) {
    for (double b : {1e-8, -1e-8}) {
      const KernelRequest mag{{v, 0.5, b, 0.3}, {0.9, -0.4}, {0.1, 0.2}, {-2, 0.5}};
      KernelRequest fr = mag;
      fr.params.b = 0;
      CHECK(max_diff(green_magnetic(mag), green_free(fr)) < 1e-6);
    }
  }
}

TEST_CASE("magnetic kernel at a level") {
  const ModelParams p{Variant::Rashba, 1, 1, 0};
  for (double e : spin_orbit_levels(p, 3).energies()) {
    try {
      green_magnetic({p, {1, 0}, {0, 0}, e});
      FAIL("expected an error");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Pole);
    }
  }
  // the excluded root of the closed form is not a pole: g stays finite nearby
  const ModelParams d{Variant::Dresselhaus, 1, 1, 0};
  const auto t = spin_orbit_levels(d, 3);
  for (const auto& l : t.excluded) {
    bool also_level = false;
    for (double e : t.energies()) also_level |= std::abs(e - l.energy) < 1e-9;
    if (also_level) continue;
    const auto near = green_magnetic({d, {0.3, 0}, {0, 0}, {l.energy, 1e-6}});
    CHECK(max_abs(near) < 1e3);
  }
}

TEST_CASE("deterministic evaluation") {
  const KernelRequest req{{Variant::Dresselhaus, 0.7, -0.9, 0.2}, {0.2, 0.1}, {-0.3, 0.4}, {0.3, 0.2}};
  const auto a = green(req), b = green(req);
  CHECK(as_mat(a) == as_mat(b));
}

TEST_CASE("first resolvent identity, coarse quadrature") {
  // G(z1) - G(z2) = (z1 - z2) int G(z1)(r, s) G(z2)(s, r') ds
  const Point2 r{0, 0}, rp{1, 0};
  const Complex z1(-1.0, 0.3), z2(-1.6, -0.2);
  auto check_identity = [&](auto kernel) {
    const int nr = 300, nt = 96;
    const double rmax = 25;
    Mat integral{};
    for (int i = 0; i < nr; ++i) {
      const double rho = (i + 0.5) * rmax / nr;
      for (int j = 0; j < nt; ++j) {
        const double th = (j + 0.5) * 2 * kPi / nt;
        const Point2 s{rho * std::cos(th), rho * std::sin(th)};
        const Mat a = kernel(r, s, z1), b = kernel(s, rp, z2);
        const double w = rho * (rmax / nr) * (2 * kPi / nt);
        integral[0] += w * (a[0] * b[0] + a[1] * b[2]);
        integral[1] += w * (a[0] * b[1] + a[1] * b[3]);
        integral[2] += w * (a[2] * b[0] + a[3] * b[2]);
        integral[3] += w * (a[2] * b[1] + a[3] * b[3]);
      }
    }
    const Mat g1 = kernel(r, rp, z1), g2 = kernel(r, rp, z2);
    double err = 0, scale = 0;
    for (int i = 0; i < 4; ++i) {
      err = std::max(err, std::abs(g1[i] - g2[i] - (z1 - z2) * integral[i]));
      scale = std::max(scale, std::abs(g1[i] - g2[i]));
    }
    return err / scale;
  };
  const ModelParams fr{Variant::Rashba, 0.5, 0, 0};
  CHECK(check_identity([&](Point2 a, Point2 b, Complex z) { return as_mat(green({fr, a, b, z})); }) <
        0.05);
  const ModelParams mg{Variant::Dresselhaus, 0.6, 0.8, 0.3};
  CHECK(check_identity([&](Point2 a, Point2 b, Complex z) { return as_mat(green({mg, a, b, z})); }) <
        0.05);
}

} // TEST_SUITE
