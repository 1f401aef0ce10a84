#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sogreen/spectrum.hpp"
#include "sogreen/verify.hpp"

using namespace sogreen;

namespace {

bool has_index(const Level& l, LevelIndex i) {
  return std::find(l.indices.begin(), l.indices.end(), i) != l.indices.end();
}

void check_same(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol * std::max(1.0, std::abs(a[i])));
}

} // namespace

TEST_SUITE("spectrum") {

TEST_CASE("free threshold") {
  CHECK(free_spectrum({Variant::Rashba, 0, 0, 0}).threshold == 0.0);
  CHECK(free_spectrum({Variant::Rashba, 1, 0, 0}).threshold == -1.0);
  CHECK(free_spectrum({Variant::Dresselhaus, 0.5, 0, 3}).threshold == -0.25);
  CHECK(free_spectrum({Variant::Dresselhaus, 0.5, 0, 3}).purely_continuous);
  try {
    free_spectrum({Variant::Rashba, 1, 1, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongCase);
  }
}

TEST_CASE("landau levels") {
  CHECK(landau_levels(2, 2).energies() == std::vector<double>{2, 6, 10});
  CHECK(landau_levels(-2, 2).energies() == landau_levels(2, 2).energies());
  CHECK(landau_levels(1, 0).energies() == std::vector<double>{1});
  CHECK_THROWS_AS(landau_levels(0, 3), Error);
}

TEST_CASE("rashba levels at b = 1, gamma = 0, kappa = 1") {
  const auto t = spin_orbit_levels({Variant::Rashba, 1, 1, 0}, 3);
  // X = 0 admits only +1; the -1 root is excluded there but -1 is still a
  // level, reached from X = 2 (2 - 2 sqrt(1/4 + 2) = -1).
  const auto e = t.energies();
  CHECK(std::abs(e.front() + 1) < 1e-14);
  const auto it = std::find_if(t.entries.begin(), t.entries.end(),
                               [](const Level& l) { return std::abs(l.energy - 1) < 1e-12; });
  REQUIRE(it != t.entries.end());
  CHECK(has_index(*it, {0, 1, 1}));
  REQUIRE(t.excluded.size() == 1);
  CHECK(t.excluded.front().energy == doctest::Approx(-1.0));
  CHECK(has_index(t.excluded.front(), {0, 1, -1}));
}

TEST_CASE("dresselhaus double level at zero") {
  const auto t = spin_orbit_levels({Variant::Dresselhaus, 1, 1, 1}, 2);
  const auto it = std::find_if(t.entries.begin(), t.entries.end(),
                               [](const Level& l) { return std::abs(l.energy) < 1e-12; });
  REQUIRE(it != t.entries.end());
  CHECK(has_index(*it, {0, -1, 1}));
  CHECK(has_index(*it, {0, -1, -1}));
}

TEST_CASE("merged levels keep every index") {
  // X = 2|b|(n+1) is produced by (n, s) and (n+1, -s)
  const auto t = spin_orbit_levels({Variant::Rashba, 0.7, 1, 0.3}, 4);
  for (const auto& l : t.entries) {
    if (l.indices.size() > 1) {
      for (const auto& i : l.indices) CHECK(i.branch == l.indices.front().branch);
    }
  }
  const auto e = t.energies();
  CHECK(std::is_sorted(e.begin(), e.end()));
  CHECK(std::adjacent_find(e.begin(), e.end()) == e.end());
}

TEST_CASE("kappa = 0 is unsupported; small kappa approaches shifted Landau levels") {
  try {
    spin_orbit_levels({Variant::Rashba, 0, 1, 0.5}, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
  // kappa -> 0 with gamma fixed: 2 kappa |beta| = |gamma + 1| |b|
  for (auto v : {Variant::Rashba, Variant::Dresselhaus}) {
    const ModelParams p{v, 1e-7, 1.0, 0.4};
    const auto e = spin_orbit_levels(p, 3).energies();
    std::vector<double> shifted;
    for (double l : landau_levels(p.b, 5).energies()) {
      shifted.push_back(l - p.gamma * p.b);
      shifted.push_back(l + p.gamma * p.b);
    }
    std::sort(shifted.begin(), shifted.end());
    for (int i = 0; i < 6; ++i) CHECK(std::abs(e[i] - shifted[i]) < 1e-5);
  }
}

TEST_CASE("rashba formal roots depend on s sign b only") {
  // with b -> -b, gamma -> -gamma - 2 keeps (gamma + 1) b and hence beta; the
  // formal roots coincide, only the admissible root at X = 0 changes side
  auto formal = [](const ModelParams& p) {
    const auto t = spin_orbit_levels(p, 5);
    std::vector<double> e = t.energies();
    for (const auto& l : t.excluded) e.push_back(l.energy);
    std::sort(e.begin(), e.end());
    return merge_sorted(e);
  };
  const ModelParams p{Variant::Rashba, 0.8, 1.3, 0.2};
  ModelParams q = p;
  q.b = -p.b;
  q.gamma = -p.gamma - 2;
  CHECK(beta(q) == doctest::Approx(beta(p)));
  check_same(formal(p), formal(q), 1e-13);
  const auto fock_q = fock_basis_levels(q, 60).energies();
  const auto closed_q = spin_orbit_levels(q, 20).energies();
  for (int i = 0; i < 6; ++i) CHECK(std::abs(fock_q[i] - closed_q[i]) < 1e-8);
}

TEST_CASE("susy spectral map") {
  CHECK(susy_spectrum_map({0}, {0}, 0) == std::vector<double>{0});
  const auto s = susy_spectrum_map({0, 2}, {2}, 1);
  check_same(s, {-std::sqrt(3.0), -1, std::sqrt(3.0)}, 1e-15);
  CHECK(susy_spectrum_map({4}, {4}, 0) == std::vector<double>{-2, 2});
  try {
    susy_spectrum_map({-1}, {0}, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidSpectrum);
  }
  // idempotent on merged input
  const auto again = susy_spectrum_map({0, 2, 2}, {2}, 1);
  CHECK(again == s);
}

TEST_CASE("closed form and the supersymmetric construction agree") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 2.0), g(-2.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p{i % 2 ? Variant::Rashba : Variant::Dresselhaus, u(rng),
                        (i % 4 < 2 ? 1 : -1) * u(rng), g(rng)};
    CAPTURE(p.b);
    CAPTURE(p.gamma);
    check_same(spin_orbit_levels(p, 6).energies(), spin_orbit_levels_susy(p, 6), 1e-12);
  }
}

TEST_CASE("closed form against the Fock basis") {
  for (auto v : {Variant::Rashba, Variant::Dresselhaus}) {
    for (double b : {1.0, -0.7}) {
      const ModelParams p{v, 0.9, b, 0.35};
      const auto fock = fock_basis_levels(p, 120).energies();
      const auto closed = spin_orbit_levels(p, 40).energies();
      for (int i = 0; i < 8; ++i) CHECK(std::abs(fock[i] - closed[i]) < 1e-8);
    }
  }
}

TEST_CASE("distance to levels") {
  int n = -1;
  CHECK(distance_to_landau_levels(2, Complex(6.5, 0.0), &n) == doctest::Approx(0.5));
  CHECK(n == 1);
  CHECK(distance_to_landau_levels(-2, Complex(-3, 4)) == doctest::Approx(std::sqrt(41.0)));

  const ModelParams p{Variant::Rashba, 1, 1, 0};
  for (double e : spin_orbit_levels(p, 5).energies()) {
    CHECK(distance_to_spin_orbit_levels(p, e) < 1e-12);
    CHECK(distance_to_spin_orbit_levels(p, Complex(e, 0.25)) == doctest::Approx(0.25));
  }
}

} // TEST_SUITE
