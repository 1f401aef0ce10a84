#include "sogreen/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace sogreen {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr Complex kI{0.0, 1.0};

// B_2, B_4, ..., B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};

bool is_nonpositive_integer(Complex a) {
  return a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::round(a.real());
}

std::string fmt(Complex a) {
  return "(" + std::to_string(a.real()) + (a.imag() < 0 ? "" : "+") + std::to_string(a.imag()) + "i)";
}

// log(sin(pi a)) without overflow for large |Im a|.
Complex log_sin_pi(Complex a) {
  if (std::abs(a.imag()) < 10.0) return std::log(std::sin(kPi * a));
  if (a.imag() > 0) {
    const Complex q = std::exp(2.0 * kPi * kI * a);
    return -kPi * kI * a + std::log(Complex(0.0, 0.5)) + std::log(1.0 - q);
  }
  const Complex q = std::exp(-2.0 * kPi * kI * a);
  return kPi * kI * a + std::log(Complex(0.0, -0.5)) + std::log(1.0 - q);
}

Complex cot_pi(Complex a) {
  if (std::abs(a.imag()) < 10.0) return std::cos(kPi * a) / std::sin(kPi * a);
  if (a.imag() > 0) {
    const Complex q = std::exp(2.0 * kPi * kI * a);
    return -kI * (1.0 + q) / (1.0 - q);
  }
  const Complex q = std::exp(-2.0 * kPi * kI * a);
  return kI * (1.0 + q) / (1.0 - q);
}

Complex lanczos_gamma(Complex z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  Complex x = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) x += p[i] / (z + double(i));
  const Complex t = z + 7.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex stirling_log_gamma(Complex z) {
  Complex sum = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi);
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex pw = inv;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    sum += kBernoulli[k - 1] / double(2 * k * (2 * k - 1)) * pw;
    pw *= inv2;
  }
  return sum;
}

// Laguerre L_m^{(alpha)}(x) by the three-term recurrence.
double laguerre(int m, int alpha, double x) {
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

void check_tricomi_args(int c, double x) {
  if (c != 1 && c != 2)
    throw Error(ErrorKind::InvalidParameter, "tricomi_psi: c must be 1 or 2");
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::InvalidParameter, "tricomi_psi: x must be positive and finite");
}

struct AsymptoticSums {
  Complex sum;   // x^a U(a, c, x)
  Complex dsum;  // x^a U'(a, c, x)
};

std::optional<AsymptoticSums> asymptotic_sums(Complex a, int c, double x, double tol) {
  Complex term = 1.0;
  AsymptoticSums out{1.0, -a / x};
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2000; ++k) {
    const Complex next = term * (a + double(k)) * (a - double(c) + 1.0 + double(k)) /
                         (double(k + 1) * -x);
    const double mag = std::abs(next);
    if (mag == 0.0) return out;  // terminating (polynomial) case
    if (mag > prev_mag) return std::nullopt;
    out.sum += next;
    out.dsum += -(a + double(k + 1)) * next / x;
    if (mag <= tol * std::abs(out.sum)) return out;
    prev_mag = mag;
    term = next;
  }
  return std::nullopt;
}

constexpr double kSeriesMaxX = 2.0;
constexpr double kSeriesAcceptRelError = 1e-13;
constexpr double kSeriesFallbackRelError = 1e-8;

} // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "SeriesControl: rel_tol must be > 0");
  if (max_terms < 1) throw Error(ErrorKind::InvalidParameter, "SeriesControl: max_terms must be >= 1");
}

// ---------------------------------------------------------------- Bessel K

namespace detail {

BesselK01 bessel_k01_series(Complex w) {
  const Complex t = 0.25 * w * w;
  const Complex log_half = std::log(0.5 * w);
  // k-th terms of sum t^k/(k!)^2 and sum t^k/(k!(k+1)!)
  Complex p0 = 1.0;
  Complex p1 = 1.0;
  double psi_k1 = -kEulerGamma;       // psi(k+1)
  double psi_k2 = 1.0 - kEulerGamma;  // psi(k+2)
  Complex i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    i0 += p0;
    i1 += p1;
    s0 += p0 * psi_k1;
    s1 += p1 * (psi_k1 + psi_k2);
    if (std::abs(p0) < 1e-18 * std::abs(i0) && k > 2) break;
    p0 *= t / double((k + 1) * (k + 1));
    p1 *= t / double((k + 1) * (k + 2));
    psi_k1 += 1.0 / (k + 1);
    psi_k2 += 1.0 / (k + 2);
  }
  BesselK01 out;
  out.k0 = s0 - log_half * i0;
  out.k1 = 1.0 / w + log_half * (0.5 * w * i1) - 0.25 * w * s1;
  return out;
}

// Steed's method (Temme's CF2), valid for Re w > 0 and |w| not small.
BesselK01 bessel_k01_continued_fraction(Complex w) {
  Complex b = 2.0 * (1.0 + w);
  Complex d = 1.0 / b;
  Complex h = d;
  Complex delh = d;
  Complex q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  Complex q = a1, c = a1;
  double a = -a1;
  Complex s = 1.0 + q * delh;
  bool converged = false;
  for (int i = 2; i < 100000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / double(i);
    const Complex qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const Complex dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s) && std::abs(delh) < kEps * std::abs(h)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw AccuracyError("bessel_k: continued fraction did not converge at w = " + fmt(w), 1.0);
  h = a1 * h;
  BesselK01 out;
  out.k0 = std::sqrt(kPi / (2.0 * w)) * std::exp(-w) / s;
  out.k1 = out.k0 * (w + 0.5 - h) / w;
  return out;
}

} // namespace detail

BesselK01 bessel_k01(Complex w) {
  if (w == Complex(0.0))
    throw Error(ErrorKind::Singularity, "bessel_k: argument is zero");
  if (w.imag() == 0.0 && w.real() < 0.0)
    throw Error(ErrorKind::BranchCut, "bessel_k: argument on the cut (-inf, 0)");
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw Error(ErrorKind::InvalidParameter, "bessel_k: non-finite argument");

  if (std::abs(w) <= 2.0) return detail::bessel_k01_series(w);
  if (w.real() >= 0.0) return detail::bessel_k01_continued_fraction(w);

  // Left half-plane: K_nu(z e^{+-i pi}) = e^{-+i nu pi} K_nu(z) -+ i pi I_nu(z), z = -w.
  const Complex z = -w;
  const BesselK01 kz = detail::bessel_k01_continued_fraction(z);
  const Complex t = 0.25 * z * z;
  Complex p0 = 1.0, p1 = 1.0, i0 = 0.0, i1 = 0.0;
  for (int k = 0; k < 500; ++k) {
    i0 += p0;
    i1 += p1;
    if (std::abs(p0) < kEps * std::abs(i0) && double(k) > std::abs(z)) break;
    p0 *= t / double((k + 1) * (k + 1));
    p1 *= t / double((k + 1) * (k + 2));
  }
  i1 *= 0.5 * z;
  const double sgn = w.imag() > 0 ? 1.0 : -1.0;
  return {kz.k0 - sgn * kI * kPi * i0, -kz.k1 - sgn * kI * kPi * i1};
}

Complex bessel_k0(Complex w) { return bessel_k01(w).k0; }
Complex bessel_k1(Complex w) { return bessel_k01(w).k1; }

// ---------------------------------------------------------- Gamma family

Complex log_gamma(Complex a) {
  if (is_nonpositive_integer(a))
    throw PoleError("log_gamma: pole at " + fmt(a), a);
  if (a.real() < 0.5)
    return std::log(kPi) - log_sin_pi(a) - log_gamma(1.0 - a);
  Complex prod = 1.0;
  while (std::abs(a) < 12.0) {
    prod *= a;
    a += 1.0;
  }
  return stirling_log_gamma(a) - std::log(prod);
}

Complex gamma_fn(Complex a) {
  if (is_nonpositive_integer(a))
    throw PoleError("gamma: pole at " + fmt(a), a);
  if (std::abs(a.imag()) > 20.0 || std::abs(a) > 30.0) return std::exp(log_gamma(a));
  if (a.real() < 0.5) return kPi / (std::sin(kPi * a) * lanczos_gamma(1.0 - a));
  return lanczos_gamma(a);
}

Complex rgamma(Complex a) {
  if (is_nonpositive_integer(a)) return 0.0;
  if (std::abs(a.imag()) > 20.0 || std::abs(a) > 30.0) return std::exp(-log_gamma(a));
  if (a.real() < 0.5) return std::sin(kPi * a) * lanczos_gamma(1.0 - a) / kPi;
  return 1.0 / lanczos_gamma(a);
}

Complex digamma(Complex a) {
  if (is_nonpositive_integer(a))
    throw PoleError("digamma: pole at " + fmt(a), a);
  if (a.real() < 0.5) return digamma(1.0 - a) - kPi * cot_pi(a);
  Complex acc = 0.0;
  while (std::abs(a) < 12.0) {
    acc -= 1.0 / a;
    a += 1.0;
  }
  const Complex inv = 1.0 / a;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex pw = inv2;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    series += kBernoulli[k - 1] / double(2 * k) * pw;
    pw *= inv2;
  }
  return acc + std::log(a) - 0.5 * inv - series;
}

Complex pochhammer(Complex a, int r) {
  if (r < 0) throw Error(ErrorKind::InvalidParameter, "pochhammer: r must be >= 0");
  Complex out = 1.0;
  for (int k = 0; k < r; ++k) out *= a + double(k);
  return out;
}

// ------------------------------------------------------- Confluent hypergeometric

Complex kummer_phi(Complex a, int c, double x, const SeriesControl& ctl) {
  ctl.validate();
  if (c < 1) throw Error(ErrorKind::InvalidParameter, "kummer_phi: c must be a positive integer");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::InvalidParameter, "kummer_phi: x must be finite and >= 0");
  if (x == 0.0) return 1.0;
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int r = 0; r < ctl.max_terms; ++r) {
    const Complex ratio = (a + double(r)) * x / (double(c + r) * double(r + 1));
    term *= ratio;
    sum += term;
    if (term == Complex(0.0)) return sum;
    // stop only once the terms are shrinking geometrically
    if (std::abs(ratio) < 0.5 && std::abs(term) <= ctl.rel_tol * std::abs(sum)) return sum;
  }
  throw AccuracyError("kummer_phi: max_terms exceeded", std::abs(term) / std::abs(sum));
}

namespace detail {

SeriesResult tricomi_series(Complex a, int c, double x, const SeriesControl& ctl) {
  ctl.validate();
  check_tricomi_args(c, x);
  if (is_nonpositive_integer(a))
    throw PoleError("tricomi series: Gamma(a) pole at a = " + fmt(a), a);
  const int n = c - 1;
  const double logx = std::log(x);

  Complex p = 1.0;                 // (a)_r / ((n+1)_r r!) x^r
  Complex psi_a = digamma(a);      // psi(a + r)
  double psi_1 = -kEulerGamma;     // psi(1 + r)
  double psi_n1 = n == 0 ? -kEulerGamma : 1.0 - kEulerGamma;  // psi(1 + n + r)
  Complex sum = 0.0;
  double abs_sum = 0.0;
  int small_run = 0;
  int r = 0;
  for (; r < ctl.max_terms; ++r) {
    const Complex bracket = logx + psi_a - psi_1 - psi_n1;
    const Complex term = p * bracket;
    sum += term;
    abs_sum += std::abs(p) * (std::abs(logx) + std::abs(psi_a) + std::abs(psi_1) + std::abs(psi_n1));
    const double next_ratio = std::abs((a + double(r)) * x) / (double(n + 1 + r) * double(r + 1));
    if (next_ratio < 0.5 && std::abs(term) <= ctl.rel_tol * 1e-2 * std::abs(sum)) {
      if (++small_run >= 2) break;
    } else {
      small_run = 0;
    }
    p *= (a + double(r)) * x / (double(n + 1 + r) * double(r + 1));
    psi_a += 1.0 / (a + double(r));
    psi_1 += 1.0 / double(r + 1);
    psi_n1 += 1.0 / double(n + r + 1);
  }
  if (r == ctl.max_terms)
    throw AccuracyError("tricomi series: max_terms exceeded", std::abs(sum));

  SeriesResult out;
  double scale = 1.0;
  if (n == 0) {
    out.scaled = -sum;
    out.unscaled = -rgamma(a) * sum;
  } else {
    out.scaled = (a - 1.0) * sum + 1.0 / x;
    out.unscaled = rgamma(a - 1.0) * sum + rgamma(a) / x;
    scale = std::abs(a - 1.0);
  }
  const double abs_err = 8.0 * kEps * (abs_sum + double(r) * std::abs(sum)) * scale;
  out.rel_error = abs_err / std::abs(out.scaled);
  return out;
}

std::optional<LargeXResult> tricomi_asymptotic(Complex a, int c, double x, double tol) {
  check_tricomi_args(c, x);
  const auto sums = asymptotic_sums(a, c, x, tol);
  if (!sums) return std::nullopt;
  return LargeXResult{sums->sum, -a * std::log(x)};
}

LargeXResult tricomi_ode(Complex a, int c, double x, double tol) {
  check_tricomi_args(c, x);
  double xs = std::max(x, 30.0);
  std::optional<AsymptoticSums> start;
  for (int it = 0; it < 200 && !(start = asymptotic_sums(a, c, xs, tol)); ++it) {
    xs *= 1.3;
    if (xs > 1e8) break;
  }
  if (!start)
    throw AccuracyError("tricomi_psi: no starting point for the asymptotic expansion", 1.0);

  // v = x_s^a U(a, c, .), integrated from x_s down to x.
  Complex v = start->sum;
  Complex dv = start->dsum;
  double x0 = xs;
  const double amag = std::max(1.0, std::abs(a));
  Complex log_scale = 0.0;
  long steps = 0;
  while (x0 > x) {
    double h = std::min(0.5 * x0, std::sqrt(x0 / amag));
    if (x0 - h < x) h = x0 - x;
    const double s = -h;
    Complex t0 = v, t1 = dv;
    Complex val = t0 + t1 * s;
    Complex der = t1;
    double spow = s;  // s^(k+1)
    int quiet = 0;
    const double ref = std::abs(v) + std::abs(dv) * h;
    for (int k = 0; k < 2000; ++k) {
      const Complex t2 = ((x0 - double(c) - double(k)) * double(k + 1) * t1 + (double(k) + a) * t0) /
                         (x0 * double(k + 2) * double(k + 1));
      const Complex dterm = double(k + 2) * t2 * spow;
      spow *= s;
      const Complex term = t2 * spow;
      val += term;
      der += dterm;
      if (std::abs(term) < 1e-18 * ref && std::abs(dterm) * h < 1e-18 * ref) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
      t0 = t1;
      t1 = t2;
    }
    v = val;
    dv = der;
    x0 -= h;
    const double mag = std::abs(v) + std::abs(dv);
    if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
      v /= mag;
      dv /= mag;
      log_scale += std::log(mag);
    }
    if (++steps > 500000)
      throw AccuracyError("tricomi_psi: ODE continuation needs too many steps", 1.0);
  }
  return LargeXResult{v, -a * std::log(xs) + log_scale};
}

PsiRegime tricomi_regime(Complex a, int c, double x, const SeriesControl& ctl) {
  check_tricomi_args(c, x);
  if (x <= kSeriesMaxX && !is_nonpositive_integer(a)) {
    const auto s = tricomi_series(a, c, x, ctl);
    if (s.rel_error <= kSeriesAcceptRelError) return PsiRegime::Series;
  }
  if (x > kSeriesMaxX && tricomi_asymptotic(a, c, x, std::min(ctl.rel_tol, 1e-15)))
    return PsiRegime::Asymptotic;
  return PsiRegime::Ode;
}

} // namespace detail

namespace {

struct Evaluated {
  detail::PsiRegime regime;
  detail::SeriesResult series;  // valid when regime == Series
  detail::LargeXResult large;   // valid otherwise
};

Evaluated evaluate_tricomi(Complex a, int c, double x, const SeriesControl& ctl) {
  using detail::PsiRegime;
  const double tol = std::min(ctl.rel_tol, 1e-15);
  std::optional<detail::SeriesResult> series;
  if (x <= kSeriesMaxX) {
    series = detail::tricomi_series(a, c, x, ctl);
    if (series->rel_error <= kSeriesAcceptRelError) return {PsiRegime::Series, *series, {}};
  } else if (auto asym = detail::tricomi_asymptotic(a, c, x, tol)) {
    return {PsiRegime::Asymptotic, {}, *asym};
  }
  try {
    return {PsiRegime::Ode, {}, detail::tricomi_ode(a, c, x, tol)};
  } catch (const AccuracyError&) {
    if (!series && x <= 30.0) series = detail::tricomi_series(a, c, x, ctl);
    if (series && series->rel_error <= kSeriesFallbackRelError)
      return {PsiRegime::Series, *series, {}};
    throw;
  }
}

} // namespace

Complex tricomi_psi(Complex a, int c, double x, const SeriesControl& ctl) {
  ctl.validate();
  check_tricomi_args(c, x);
  if (is_nonpositive_integer(a)) {
    // U(-m, c, x) = (-1)^m m! L_m^{(c-1)}(x)
    const int m = int(-a.real());
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    return (m % 2 ? -1.0 : 1.0) * fact * laguerre(m, c - 1, x);
  }
  const Evaluated e = evaluate_tricomi(a, c, x, ctl);
  const Complex out = e.regime == detail::PsiRegime::Series
                          ? e.series.unscaled
                          : std::exp(e.large.log_prefactor) * e.large.value;
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
    throw AccuracyError("tricomi_psi: value overflows double", 1.0);
  return out;
}

Complex tricomi_psi_scaled(Complex a, int c, double x, const SeriesControl& ctl) {
  ctl.validate();
  check_tricomi_args(c, x);
  if (is_nonpositive_integer(a))
    throw PoleError("Gamma(a) Psi(a, c, x): pole at a = " + fmt(a), a);
  const Evaluated e = evaluate_tricomi(a, c, x, ctl);
  if (e.regime == detail::PsiRegime::Series) return e.series.scaled;
  return std::exp(log_gamma(a) + e.large.log_prefactor) * e.large.value;
}

} // namespace sogreen
