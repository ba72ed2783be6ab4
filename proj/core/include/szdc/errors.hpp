#pragma once

#include <stdexcept>
#include <string>

namespace szdc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the operator's domain (|z| > R, Re(z) > b_n, ...).
struct DomainError : Error {
  using Error::Error;
};

// Final result of a basis evaluation exceeds the representable range.
struct OverflowError : Error {
  using Error::Error;
};

// A series truncation rule exceeded its hard cap.
struct TruncationError : Error {
  using Error::Error;
};

// Two quadrature resolutions failed to agree.
struct QuadratureError : Error {
  using Error::Error;
};

// Invalid contour / radius arrangement (r >= r1, point on contour, ...).
struct GeometryError : Error {
  using Error::Error;
};

// A*r >= 1: the constants' geometric series diverges.
struct DivergenceError : Error {
  using Error::Error;
};

// Coefficient decay certificate |c_p| <= M A^p/(2p)! is violated.
struct CertificateError : Error {
  CertificateError(const std::string& msg, int index)
      : Error(msg), violating_index(index) {}
  int violating_index;
};

struct ParseError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Order fitting asked on unusable data (zero errors, too few points).
struct DegenerateDataError : Error {
  using Error::Error;
};

}  // namespace szdc
