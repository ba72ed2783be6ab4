#pragma once

#include <functional>
#include <span>

#include "szdc/operator.hpp"

namespace szdc {

// One row of an n-sweep.
struct ConvergenceRecord {
  int n = 0;
  double bn = 0.0;
  double error = 0.0;  // measured sup-norm
  double bound = 0.0;  // theoretical bound for this row
  double ratio = 0.0;  // error (n+2)/(b_n+1)
  int derivative_order = 0;
};

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
};

// sup |g| over |z| = r: max over `samples` equispaced boundary points,
// then golden-section refinement around the best node. Valid for g
// analytic on |z| <= r by the maximum modulus principle. samples >= 64.
double disk_sup_norm(const std::function<Complex(Complex)>& g, double r,
                     int samples = 256);

// (p!/2 pi i) \oint g(nu)/(nu - z)^{p+1} d nu on the given circle,
// trapezoidal nodes doubled until two successive results agree to 1e-11
// relative (QuadratureError past 4096 nodes). GeometryError unless z is
// strictly inside.
Complex cauchy_derivative(const std::function<Complex(Complex)>& g, int p,
                          Complex z, const ContourSpec& contour);

// (b_n+1) C p! r1 / ((n+2) (r1 - r)^{p+1}); GeometryError unless 1 <= r < r1.
double derivative_error_bound(int p, double r, double r1, double C, int n,
                              double bn);

// || z (1 - z/(2 b_n)) f'' + (1 - 2z/b_n) f' ||_r — the quantity whose
// positivity drives the lower estimate. Zero iff f has degree <= 1... it
// vanishes exactly for constants.
double lower_order_functional(const TaylorFunction& f,
                              const OperatorConfig& cfg, double r);

// ||P'||_r <= (deg P / r) ||P||_r with a 1e-9 sampling slack. Degree >= 1
// required (ConfigError otherwise).
bool bernstein_inequality_check(const Polynomial& P, double r);

// Least-squares slope/intercept of log(error) against log(n), plus the
// min/max of error (n+2)/(b_n+1) across the records. Requires >= 5 records
// with strictly positive errors and distinct n (DegenerateDataError).
OrderFit fit_order(std::span<const ConvergenceRecord> records);

}  // namespace szdc
