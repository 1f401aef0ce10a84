#include "sogreen/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sogreen {

namespace {

bool same_level(double a, double b) {
  return std::abs(a - b) <= kLevelMergeTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

void insert_level(std::vector<Level>& levels, double energy, LevelIndex idx, const std::string& note) {
  for (auto& l : levels) {
    if (same_level(l.energy, energy)) {
      l.indices.push_back(idx);
      if (l.note.empty()) l.note = note;
      return;
    }
  }
  levels.push_back({energy, {idx}, note});
}

void sort_levels(std::vector<Level>& levels) {
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.energy < b.energy; });
}

void check_n_max(int n_max) {
  if (n_max < 0) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 0");
}

} // namespace

std::vector<double> LevelTable::energies() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& l : entries) out.push_back(l.energy);
  return out;
}

std::vector<double> merge_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values)
    if (out.empty() || !same_level(out.back(), v)) out.push_back(v);
  return out;
}

FreeSpectrum free_spectrum(const ModelParams& p) {
  p.validate();
  if (p.b != 0.0) throw Error(ErrorKind::WrongCase, "free_spectrum requires b = 0");
  return {-p.kappa * p.kappa, true};
}

LevelTable landau_levels(double b, int n_max) {
  if (!std::isfinite(b)) throw Error(ErrorKind::InvalidParameter, "b must be finite");
  if (b == 0.0) throw Error(ErrorKind::WrongCase, "landau_levels requires b != 0");
  check_n_max(n_max);
  LevelTable t;
  for (int n = 0; n <= n_max; ++n) t.entries.push_back({std::abs(b) * (2 * n + 1), {{n, 1, 1}}, ""});
  return t;
}

LevelTable spin_orbit_levels(const ModelParams& p, int n_max) {
  p.validate();
  check_n_max(n_max);
  if (p.b == 0.0) throw Error(ErrorKind::WrongCase, "spin_orbit_levels requires b != 0");
  if (p.kappa == 0.0)
    throw Error(ErrorKind::Unsupported,
                "kappa = 0: the Hamiltonian decouples; use landau_levels shifted by +-gamma*b");
  const double bt = beta(p);
  const double ab = std::abs(p.b);
  const int sb = p.b > 0 ? 1 : -1;
  const bool rashba = p.variant == Variant::Rashba;
  // At X = 0 only eps = 2 kappa sigma beta is an eigenvalue.
  const int sigma = rashba ? sb : -sb;

  LevelTable t;
  for (int n = 0; n <= n_max; ++n) {
    for (int s : {1, -1}) {
      const double x = ab * (2 * n + 1 + (rashba ? -s * sb : s * sb));
      for (int branch : {1, -1}) {
        const double e = x + branch * 2 * p.kappa * std::sqrt(bt * bt + x);
        const LevelIndex idx{n, s, branch};
        if (x == 0.0) {
          const double admissible = 2 * p.kappa * sigma * bt;
          if (!same_level(e, admissible)) {
            insert_level(t.excluded, e, idx, "spurious root at zero ladder argument");
            continue;
          }
          insert_level(t.entries, e, idx, "zero ladder argument");
        } else {
          insert_level(t.entries, e, idx, "");
        }
      }
    }
  }
  sort_levels(t.entries);
  sort_levels(t.excluded);
  return t;
}

std::vector<double> susy_spectrum_map(const std::vector<double>& spec_aa_star,
                                      const std::vector<double>& spec_a_star_a, double m) {
  if (!std::isfinite(m) || m < 0) throw Error(ErrorKind::InvalidParameter, "m must be finite and >= 0");
  std::vector<double> out;
  for (double l : spec_aa_star) {
    if (!(l >= 0.0)) throw Error(ErrorKind::InvalidSpectrum, "negative element in spec(AA*)");
    out.push_back(-std::sqrt(l + m * m));
  }
  for (double l : spec_a_star_a) {
    if (!(l >= 0.0)) throw Error(ErrorKind::InvalidSpectrum, "negative element in spec(A*A)");
    out.push_back(std::sqrt(l + m * m));
  }
  return merge_sorted(std::move(out));
}

std::vector<double> spin_orbit_levels_susy(const ModelParams& p, int n_max) {
  p.validate();
  check_n_max(n_max);
  if (p.b == 0.0) throw Error(ErrorKind::WrongCase, "spin_orbit_levels_susy requires b != 0");
  const double bt = beta(p);
  const double ab = std::abs(p.b);
  // A = U_21 is a rescaled ladder operator; which of A*A, AA* has the zero
  // mode depends on the variant and the field direction.
  const bool zero_in_a_star_a = (p.variant == Variant::Rashba) == (p.b > 0);
  std::vector<double> with_zero, without_zero;
  for (int k = 0; k <= n_max + 1; ++k) {
    with_zero.push_back(2 * ab * k);
    if (k > 0) without_zero.push_back(2 * ab * k);
  }
  const auto& a_star_a = zero_in_a_star_a ? with_zero : without_zero;
  const auto& aa_star = zero_in_a_star_a ? without_zero : with_zero;

  // V = [[beta, A*], [A, -beta]]; for beta < 0 use -V, which has the same form.
  std::vector<double> v = susy_spectrum_map(aa_star, a_star_a, std::abs(bt));
  if (bt < 0)
    for (double& x : v) x = -x;

  std::vector<double> out;
  for (double x : v) out.push_back(x * x + 2 * p.kappa * x - bt * bt);
  return merge_sorted(std::move(out));
}

double distance_to_landau_levels(double b, Complex z, int* index) {
  const double ab = std::abs(b);
  const double k = std::max(0.0, std::round((z.real() / ab - 1.0) / 2.0));
  const int n = k > 1e9 ? int(1e9) : int(k);
  if (index) *index = n;
  return std::abs(z - ab * (2.0 * n + 1.0));
}

double distance_to_spin_orbit_levels(const ModelParams& p, Complex z) {
  const double bt = beta(p);
  const double ab = std::abs(p.b);
  const int sb = p.b > 0 ? 1 : -1;
  const int sigma = p.variant == Variant::Rashba ? sb : -sb;
  // Levels are X +- 2 kappa sqrt(beta^2 + X) on the grid X = 2|b|k. Invert
  // u^2 +- 2 kappa u - (beta^2 + Re z) = 0 for u = sqrt(beta^2 + X) and probe
  // the grid points next to each real root.
  const double zr = z.real();
  const double disc = p.kappa * p.kappa + bt * bt + zr;
  std::vector<double> xs = {0.0};
  if (disc >= 0) {
    for (double sg : {1.0, -1.0})
      for (double rt : {1.0, -1.0}) {
        const double u = -sg * p.kappa + rt * std::sqrt(disc);
        if (u >= 0) xs.push_back(u * u - bt * bt);
      }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double k0 = std::max(0.0, std::round(x / (2 * ab)));
    for (double k = std::max(0.0, k0 - 1); k <= k0 + 1; k += 1) {
      const double xk = 2 * ab * k;
      if (xk == 0.0) {
        best = std::min(best, std::abs(z - 2 * p.kappa * sigma * bt));
        continue;
      }
      for (int branch : {1, -1})
        best = std::min(best, std::abs(z - (xk + branch * 2 * p.kappa * std::sqrt(bt * bt + xk))));
    }
  }
  return best;
}

} // namespace sogreen
