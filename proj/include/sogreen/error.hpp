#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sogreen {

// Categories map one-to-one onto CLI exit statuses (see tools/sogreen.cpp).
enum class ErrorKind {
  InvalidParameter,   // malformed or non-finite input
  Unsupported,        // parameter combination outside the formula's domain
  WrongCase,          // free-case routine called with b != 0 or vice versa
  BranchCut,          // argument on the cut of sqrt/log
  Pole,               // evaluation at (or within tolerance of) a spectral point
  Spectrum,           // z inside a continuous spectrum
  Singularity,        // coincident points for a kernel evaluation
  Geometry,           // finite-difference stencil crosses the singular point
  Precondition,       // matrix-oracle precondition (spectral collision)
  InvalidSpectrum,    // negative element in a spectrum set
  Accuracy,           // series or quadrature did not reach the requested tolerance
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_domain() const noexcept {
    return kind_ == ErrorKind::BranchCut || kind_ == ErrorKind::Pole ||
           kind_ == ErrorKind::Spectrum || kind_ == ErrorKind::Singularity ||
           kind_ == ErrorKind::Geometry || kind_ == ErrorKind::WrongCase ||
           kind_ == ErrorKind::Unsupported || kind_ == ErrorKind::Precondition;
  }

private:
  ErrorKind kind_;
};

class PoleError : public Error {
public:
  PoleError(const std::string& what, std::complex<double> location, int index = -1)
      : Error(ErrorKind::Pole, what), location_(location), index_(index) {}

  std::complex<double> location() const noexcept { return location_; }
  // Level index n when the pole is a Landau level, -1 otherwise.
  int index() const noexcept { return index_; }

private:
  std::complex<double> location_;
  int index_;
};

class AccuracyError : public Error {
public:
  AccuracyError(const std::string& what, double achieved)
      : Error(ErrorKind::Accuracy, what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

} // namespace sogreen
