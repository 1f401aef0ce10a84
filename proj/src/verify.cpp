#include "sogreen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace sogreen {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  const auto one_way = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double u : x) {
      double best = std::numeric_limits<double>::infinity();
      for (double v : y) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

std::string dims(const Eigen::MatrixXcd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

} // namespace

void MatrixOperator::validate() const {
  if (data.rows() > kMaxMatrixDim || data.cols() > kMaxMatrixDim)
    throw Error(ErrorKind::InvalidParameter, "matrix dimensions exceed 64");
  if (!data.allFinite()) throw Error(ErrorKind::InvalidParameter, "matrix has non-finite entries");
  if (self_adjoint) {
    if (data.rows() != data.cols())
      throw Error(ErrorKind::InvalidParameter, "self-adjoint matrix must be square");
    if (max_abs(data - data.adjoint()) >= 1e-12)
      throw Error(ErrorKind::InvalidParameter, "matrix claimed self-adjoint is not");
  }
}

ResidualReport make_report(double residual, double tolerance, std::string context) {
  return {residual, tolerance, residual <= tolerance, std::move(context)};
}

ResidualReport check_resolvent_identity(const MatrixOperator& a, double alpha, Complex e, double tol) {
  a.validate();
  if (!a.self_adjoint) throw Error(ErrorKind::InvalidParameter, "resolvent identity needs self-adjoint A");
  if (!std::isfinite(alpha) || !std::isfinite(e.real()) || !std::isfinite(e.imag()))
    throw Error(ErrorKind::InvalidParameter, "non-finite alpha or E");
  const auto n = a.data.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& A = a.data;
  const Eigen::MatrixXcd A2 = A * A;

  const Complex eta = principal_sqrt(e + alpha * alpha, CutSide::Upper);
  if (std::abs(eta) < 1e-12) throw Error(ErrorKind::Precondition, "eta = 0");
  const Complex wm = (eta - alpha) * (eta - alpha);
  const Complex wp = (eta + alpha) * (eta + alpha);

  const Eigen::VectorXd lam = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(A).eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double l = lam[i];
    const double scale = 1e-10 * (1.0 + l * l + std::abs(alpha * l));
    if (std::abs(l * l + 2 * alpha * l - e) < scale)
      throw Error(ErrorKind::Precondition, "E lies in spec(A^2 + 2 alpha A)");
    if (std::abs(l * l - wm) < scale)
      throw Error(ErrorKind::Precondition, "(eta - alpha)^2 lies in spec(A^2)");
    if (std::abs(l * l - wp) < scale)
      throw Error(ErrorKind::Precondition, "(eta + alpha)^2 lies in spec(A^2)");
  }

  const Eigen::MatrixXcd lhs = (A2 + 2.0 * alpha * A - e * id).inverse();
  const Eigen::MatrixXcd rm = (A2 - wm * id).inverse();
  const Eigen::MatrixXcd rp = (A2 - wp * id).inverse();
  const Eigen::MatrixXcd form1 = ((A + (eta - alpha) * id) * rm - (A - (eta + alpha) * id) * rp) / (2.0 * eta);
  const Eigen::MatrixXcd form2 =
      (A - alpha * id) * (rm - rp) / (2.0 * eta) + 0.5 * (rm + rp);
  const double res = std::max(max_abs(lhs - form1), max_abs(lhs - form2));
  std::ostringstream ctx;
  ctx << "resolvent identity " << dims(A) << " alpha=" << alpha << " E=" << e;
  return make_report(res, tol, ctx.str());
}

ResidualReport check_susy_proposition(const MatrixOperator& a, double m, double tol) {
  a.validate();
  if (!std::isfinite(m) || m < 0) throw Error(ErrorKind::InvalidParameter, "m must be finite and >= 0");
  const Eigen::MatrixXcd& A = a.data;
  const auto rows = A.rows(), cols = A.cols();
  // L acts on C^cols (+) C^rows.
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(cols + rows, cols + rows);
  L.topLeftCorner(cols, cols).diagonal().setConstant(m);
  L.bottomRightCorner(rows, rows).diagonal().setConstant(-m);
  L.topRightCorner(cols, rows) = A.adjoint();
  L.bottomLeftCorner(rows, cols) = A;
  const Eigen::VectorXd spec_l = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(L).eigenvalues();

  // spec A*A and AA* from the singular values, padded with zeros.
  std::vector<double> a_star_a(cols, 0.0), aa_star(rows, 0.0);
  if (rows > 0 && cols > 0) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      a_star_a[i] = sv[i] * sv[i];
      aa_star[i] = sv[i] * sv[i];
    }
  }
  const std::vector<double> mapped = susy_spectrum_map(aa_star, a_star_a, m);
  const std::vector<double> direct(spec_l.data(), spec_l.data() + spec_l.size());
  std::ostringstream ctx;
  ctx << "susy " << dims(A) << " m=" << m;
  return make_report(hausdorff(direct, mapped), tol, ctx.str());
}

Complex landau_projector(double b, int n, Point2 r, Point2 rp) {
  if (!std::isfinite(b) || b == 0.0) throw Error(ErrorKind::WrongCase, "landau_projector requires b != 0");
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "level index must be >= 0");
  const double ab = std::abs(b);
  const Point2 d = r - rp;
  const double x = 0.5 * ab * (d.x * d.x + d.y * d.y);
  double prev = 1.0, cur = 1.0 - x;
  double lag = 1.0;
  if (n == 1) lag = cur;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 - x) * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
    lag = cur;
  }
  const Complex phase = std::exp(-0.5 * kI * b * wedge(r, rp));
  return ab / (2 * kPi) * phase * std::exp(-0.5 * x) * lag;
}

SpectralSum spectral_sum_green0(double b, Point2 r, Point2 rp, Complex z, int n_max, double tol) {
  if (!std::isfinite(b) || b == 0.0) throw Error(ErrorKind::WrongCase, "spectral sum requires b != 0");
  if (n_max < 1) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 1");
  const double ab = std::abs(b);
  if (distance_to_landau_levels(b, z) <= 1e-3 * ab)
    throw Error(ErrorKind::Pole, "spectral sum: z too close to a Landau level");
  const Point2 d = r - rp;
  const double rho2 = d.x * d.x + d.y * d.y;
  if (rho2 == 0.0) throw Error(ErrorKind::Singularity, "spectral sum at coincident points");
  const double z0 = -ab;

  // M_p = int_0^inf t^p e^{z0 t} (|b| / (4 pi sinh |b|t)) exp(-(|b| rho^2/4) coth |b|t) dt
  const auto heat_moment = [&](int p) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const auto f = [&](double t) -> double {
      if (t <= 0.0) return 0.0;
      const double u = ab * t;
      const double q = std::exp(-2 * u);
      const double one_minus_q = -std::expm1(-2 * u);
      const double coth = (1 + q) / one_minus_q;
      // e^{-|b|t}/sinh(|b|t) = 2 q / (1 - q)
      const double w = ab / (4 * kPi) * 2 * q / one_minus_q * std::exp(-0.25 * ab * rho2 * coth);
      return p == 0 ? w : t * w;
    };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
  };
  const Complex phase = std::exp(-0.5 * kI * b * wedge(r, rp));
  const Complex m0 = phase * heat_moment(0);
  const Complex m1 = phase * heat_moment(1);

  const double x = 0.5 * ab * rho2;
  const double gauss = std::exp(-0.5 * x);
  Complex tail = 0.0;
  double prev = 1.0, cur = 1.0 - x;
  for (int n = 0; n <= n_max; ++n) {
    double lag;
    if (n == 0) {
      lag = 1.0;
    } else if (n == 1) {
      lag = cur;
    } else {
      const double next = ((2 * (n - 1) + 1 - x) * cur - (n - 1) * prev) / n;
      prev = cur;
      cur = next;
      lag = cur;
    }
    const double en = ab * (2 * n + 1);
    tail += gauss * lag / ((en - z) * (en - z0) * (en - z0));
  }
  const Complex dz = z - z0;
  const Complex value = m0 + dz * m1 + dz * dz * ab / (2 * kPi) * phase * tail;

  // |e^{-x/2} L_n(x)| <= 1; remaining sum bounded by an integral.
  const double n1 = n_max + 1.0;
  const double dist = std::max(ab * (2 * n1 + 1) - std::abs(z), std::abs(z.imag()));
  const double bound = dist > 0 ? ab / (2 * kPi) * std::norm(dz) / dist / (4 * ab * ab * n1)
                                : std::numeric_limits<double>::infinity();
  if (bound > tol)
    throw AccuracyError("spectral sum: n_max too small for the requested tolerance", bound);
  return {value, bound};
}

ResidualReport apply_hamiltonian_fd(const ModelParams& p, const ColumnKernel& kernel, Complex z,
                                    Point2 r, double h, Point2 singular_point, double tol) {
  p.validate();
  if (!(h >= 1e-4 && h <= 1e-1)) throw Error(ErrorKind::InvalidParameter, "h must lie in [1e-4, 1e-1]");
  if (norm(r - singular_point) <= 10 * h)
    throw Error(ErrorKind::Geometry, "finite-difference stencil too close to the singular point");

  const SpinKernel c = kernel(r);
  const SpinKernel xp = kernel({r.x + h, r.y});
  const SpinKernel xm = kernel({r.x - h, r.y});
  const SpinKernel yp = kernel({r.x, r.y + h});
  const SpinKernel ym = kernel({r.x, r.y - h});
  const double b = p.b;

  struct Ops {
    Complex k2, kx, ky;
  };
  // K^2, K_x, K_y applied to one scalar component, selected by `get`.
  const auto ops = [&](auto get) {
    const Complex f = get(c);
    const Complex dx = (get(xp) - get(xm)) / (2 * h);
    const Complex dy = (get(yp) - get(ym)) / (2 * h);
    const Complex lap = (get(xp) + get(xm) + get(yp) + get(ym) - 4.0 * f) / (h * h);
    Ops o;
    o.kx = -kI * dx + 0.5 * b * r.y * f;
    o.ky = -kI * dy - 0.5 * b * r.x * f;
    o.k2 = -lap - kI * b * (r.y * dx - r.x * dy) + 0.25 * b * b * (r.x * r.x + r.y * r.y) * f;
    return o;
  };
  const auto u12 = [&](const Ops& o) {
    return p.variant == Variant::Rashba ? o.ky + kI * o.kx : -o.kx - kI * o.ky;
  };
  const auto u21 = [&](const Ops& o) {
    return p.variant == Variant::Rashba ? o.ky - kI * o.kx : -o.kx + kI * o.ky;
  };

  double res = 0.0;
  // column 1: (g11, g21); column 2: (g12, g22)
  for (int col = 0; col < 2; ++col) {
    const auto up = col == 0 ? ops([](const SpinKernel& k) { return k.g11; })
                             : ops([](const SpinKernel& k) { return k.g12; });
    const auto dn = col == 0 ? ops([](const SpinKernel& k) { return k.g21; })
                             : ops([](const SpinKernel& k) { return k.g22; });
    const Complex fu = col == 0 ? c.g11 : c.g12;
    const Complex fd = col == 0 ? c.g21 : c.g22;
    const Complex ru = up.k2 + 2 * p.kappa * u12(dn) + (p.gamma * b - z) * fu;
    const Complex rd = dn.k2 + 2 * p.kappa * u21(up) + (-p.gamma * b - z) * fd;
    res = std::max({res, std::abs(ru), std::abs(rd)});
  }
  std::ostringstream ctx;
  ctx << "fd residual " << to_string(p.variant) << " kappa=" << p.kappa << " b=" << b << " h=" << h;
  return make_report(res, tol, ctx.str());
}

namespace {

Eigen::VectorXd fock_eigenvalues(const ModelParams& p, int n) {
  const double ab = std::abs(p.b);
  const double b = p.b;
  // index 2k: |k, up>, 2k+1: |k, down>
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    h(2 * k, 2 * k) = ab * (2 * k + 1) + p.gamma * b;
    h(2 * k + 1, 2 * k + 1) = ab * (2 * k + 1) - p.gamma * b;
  }
  const double c = 2 * p.kappa * std::sqrt(2 * ab);
  const bool rashba = p.variant == Variant::Rashba;
  for (int k = 0; k + 1 < n; ++k) {
    const double s = c * std::sqrt(k + 1.0);
    // <up-index| U |down-index>
    int up, dn;
    Complex v;
    if (rashba) {
      v = kI * s;
      if (b > 0) { up = 2 * (k + 1); dn = 2 * k + 1; }
      else { up = 2 * k; dn = 2 * (k + 1) + 1; }
    } else {
      v = -s;
      if (b > 0) { up = 2 * k; dn = 2 * (k + 1) + 1; }
      else { up = 2 * (k + 1); dn = 2 * k + 1; }
    }
    h(up, dn) = v;
    h(dn, up) = std::conj(v);
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

} // namespace

LevelTable fock_basis_levels(const ModelParams& p, int basis_size) {
  p.validate();
  if (p.b == 0.0) throw Error(ErrorKind::WrongCase, "fock_basis_levels requires b != 0");
  if (basis_size < 16) throw Error(ErrorKind::InvalidParameter, "basis_size must be >= 16");
  const double cutoff = std::abs(p.b) * basis_size;
  const Eigen::VectorXd small = fock_eigenvalues(p, basis_size);
  const Eigen::VectorXd big = fock_eigenvalues(p, 2 * basis_size);

  std::vector<double> kept;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < small.size(); ++i) {
    if (small[i] > cutoff) break;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < big.size(); ++j) best = std::min(best, std::abs(small[i] - big[j]));
    worst = std::max(worst, best);
    kept.push_back(small[i]);
  }
  if (worst > 1e-8)
    throw AccuracyError("fock_basis_levels: lowest levels not converged in basis size", worst);

  // eigen-solver noise on degenerate levels is far above the 1e-12 merge tolerance
  LevelTable t;
  for (double e : kept) {
    if (!t.entries.empty() && std::abs(t.entries.back().energy - e) < 1e-9) continue;
    t.entries.push_back({e, {}, "truncated Fock basis"});
  }
  return t;
}

} // namespace sogreen
