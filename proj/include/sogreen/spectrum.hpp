#pragma once

#include <string>
#include <vector>

#include "sogreen/model.hpp"

namespace sogreen {

struct LevelIndex {
  int n = 0;
  int s = 1;
  int branch = 1;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
};

struct Level {
  double energy = 0.0;
  std::vector<LevelIndex> indices;  // every (n, s, branch) producing this energy
  std::string note;
};

// Ascending, numerically distinct energies. `excluded` holds formal roots of
// the closed form that are not eigenvalues (the X = 0 root of the wrong sign).
struct LevelTable {
  std::vector<Level> entries;
  std::vector<Level> excluded;

  std::vector<double> energies() const;
};

struct FreeSpectrum {
  double threshold;          // spec H = [threshold, +inf)
  bool purely_continuous;
};

inline constexpr double kLevelMergeTol = 1e-12;

FreeSpectrum free_spectrum(const ModelParams& p);

// |b|(2n+1), n = 0..n_max.
LevelTable landau_levels(double b, int n_max);

// eps^{branch}(n, s) = X + branch * 2 kappa sqrt(beta^2 + X) with
// X = |b|(2n+1 - s sign b) (Rashba) or |b|(2n+1 + s sign b) (Dresselhaus).
LevelTable spin_orbit_levels(const ModelParams& p, int n_max);

// -sqrt(spec(AA*) + m^2)  U  sqrt(spec(A*A) + m^2), sorted, merged.
std::vector<double> susy_spectrum_map(const std::vector<double>& spec_aa_star,
                                      const std::vector<double>& spec_a_star_a, double m);

// Same levels as spin_orbit_levels, built the other way round: spectrum of
// V = U + beta sigma_z from the ladder spectra of A*A and AA*, pushed through
// g(v) = v^2 + 2 kappa v - beta^2.
std::vector<double> spin_orbit_levels_susy(const ModelParams& p, int n_max);

// Distance from z to the nearest |b|(2n+1); the level index goes to *index.
double distance_to_landau_levels(double b, Complex z, int* index = nullptr);

// Distance from z to the nearest admissible spin-orbit level (kappa != 0).
double distance_to_spin_orbit_levels(const ModelParams& p, Complex z);

// Merge a sorted list of energies within kLevelMergeTol.
std::vector<double> merge_sorted(std::vector<double> values);

} // namespace sogreen
