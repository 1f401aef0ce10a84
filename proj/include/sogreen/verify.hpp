#pragma once

#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "sogreen/green.hpp"
#include "sogreen/model.hpp"
#include "sogreen/spectrum.hpp"

namespace sogreen {

inline constexpr int kMaxMatrixDim = 64;

struct MatrixOperator {
  Eigen::MatrixXcd data;
  bool self_adjoint = false;

  // Checks finiteness, the size limit and, if claimed, ||A - A*|| < 1e-12.
  void validate() const;
};

struct ResidualReport {
  double residual_max = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string context;
};

ResidualReport make_report(double residual, double tolerance, std::string context);

// R(B; E) for B = A^2 + 2 alpha A compared with both factorized forms through
// R(A^2; (eta -+ alpha)^2), eta = sqrt(E + alpha^2).
ResidualReport check_resolvent_identity(const MatrixOperator& a, double alpha, Complex e,
                                        double tol = 1e-10);

// Spectrum of L = [[m, A*], [A, -m]] against -sqrt(spec AA* + m^2) U sqrt(spec A*A + m^2);
// the residual is the Hausdorff distance of the two sets.
ResidualReport check_susy_proposition(const MatrixOperator& a, double m, double tol = 1e-10);

// Kernel of the projector onto the n-th Landau level (same gauge as green0_landau).
Complex landau_projector(double b, int n, Point2 r, Point2 rp);

struct SpectralSum {
  Complex value;
  double truncation_bound;  // bound on the neglected tail
};

// Eigenprojection expansion of the Landau resolvent, summed to n_max with two
// subtractions at z0 = -|b|; the subtracted terms come from heat-kernel integrals.
SpectralSum spectral_sum_green0(double b, Point2 r, Point2 rp, Complex z, int n_max,
                                double tol = 1e-6);

// Column kernel: r -> G(r, r'; z) for fixed r'.
using ColumnKernel = std::function<SpinKernel(Point2)>;

// max |(H - z) G| over both columns at r, by central differences with step h.
ResidualReport apply_hamiltonian_fd(const ModelParams& p, const ColumnKernel& kernel, Complex z,
                                    Point2 r, double h, Point2 singular_point,
                                    double tol = std::numeric_limits<double>::infinity());

// Levels of H in the truncated basis {|n, up>, |n, down> : n < basis_size},
// restricted to those below |b| basis_size and checked against 2*basis_size.
LevelTable fock_basis_levels(const ModelParams& p, int basis_size);

} // namespace sogreen
