#pragma once

#include <complex>
#include <span>
#include <vector>

#include "szdc/errors.hpp"

namespace szdc {

using Complex = std::complex<double>;

// Circle |nu - center| = radius sampled at node_count equispaced points.
struct ContourSpec {
  double radius = 1.0;
  Complex center{0.0, 0.0};
  int node_count = 256;
};

// Throws GeometryError/ConfigError unless radius > 0 and node_count is an
// even integer >= 8.
void validate_contour(const ContourSpec& contour);

std::vector<Complex> contour_nodes(const ContourSpec& contour);

// Szasz basis weight e^{-nz/b}(nz/b)^k / k!, evaluated in log-magnitude /
// phase form so k up to 1e4 neither overflows nor underflows before the
// final exponentiation. Throws OverflowError if the *result* exceeds the
// representable range.
Complex poisson_weight(int n, double bn, long long k, Complex z);

// Integral of the Bernstein weight against t^p on [0, b]:
//   b^{p+1} n! (k+p)! / (k! (n+p+1)!)
// via log-gamma differences. For k > n the literal integral no longer
// exists (the weight vanishes identically) and this returns the finite
// continuation of the product above, which is what the operator's k-sum
// requires for its normalization.
double bernstein_moment_integral(int n, int k, int p, double bn);

// Trapezoidal (1/2\pi i) closed-contour integral from samples at the
// contour nodes. Exact for integrands whose Laurent expansion on the
// contour has bandwidth below node_count. Throws ConfigError on a
// length mismatch.
Complex contour_integral(std::span<const Complex> samples,
                         const ContourSpec& contour);

// Kahan-Babuska (Neumaier) compensated accumulator.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexNeumaierSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_, im_;
};

Complex compensated_sum(std::span<const Complex> terms);

}  // namespace szdc
