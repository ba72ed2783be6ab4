#include "szdc/numerics.hpp"

#include <cmath>
#include <numbers>

namespace szdc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// log(DBL_MAX) with a little headroom
constexpr double kMaxExpArg = 709.0;
}  // namespace

void validate_contour(const ContourSpec& contour) {
  if (!(contour.radius > 0.0)) {
    throw GeometryError("contour radius must be positive");
  }
  if (contour.node_count < 8 || contour.node_count % 2 != 0) {
    throw ConfigError("contour node_count must be even and >= 8");
  }
}

std::vector<Complex> contour_nodes(const ContourSpec& contour) {
  validate_contour(contour);
  std::vector<Complex> nodes(static_cast<size_t>(contour.node_count));
  for (int j = 0; j < contour.node_count; ++j) {
    const double theta = kTwoPi * j / contour.node_count;
    nodes[static_cast<size_t>(j)] =
        contour.center + std::polar(contour.radius, theta);
  }
  return nodes;
}

Complex poisson_weight(int n, double bn, long long k, Complex z) {
  if (n < 1) throw DomainError("poisson_weight: n must be >= 1");
  if (!(bn > 0.0)) throw DomainError("poisson_weight: b_n must be positive");
  if (k < 0) throw DomainError("poisson_weight: k must be >= 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("poisson_weight: non-finite argument");
  }

  const Complex u = static_cast<double>(n) * z / bn;
  const double mag_u = std::abs(u);
  if (mag_u == 0.0) {
    return k == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  }
  const double log_mag = static_cast<double>(k) * std::log(mag_u) - u.real() -
                         std::lgamma(static_cast<double>(k) + 1.0);
  if (log_mag > kMaxExpArg) {
    throw OverflowError("poisson_weight: result exceeds representable range");
  }
  const double phase = static_cast<double>(k) * std::arg(u) - u.imag();
  return std::polar(std::exp(log_mag), phase);
}

double bernstein_moment_integral(int n, int k, int p, double bn) {
  if (n < 1) throw DomainError("bernstein_moment_integral: n must be >= 1");
  if (k < 0) throw DomainError("bernstein_moment_integral: k must be >= 0");
  if (p < 0) throw DomainError("bernstein_moment_integral: p must be >= 0");
  if (!(bn > 0.0)) {
    throw DomainError("bernstein_moment_integral: b_n must be positive");
  }
  const double lg = std::lgamma(n + 1.0) + std::lgamma(k + p + 1.0) -
                    std::lgamma(k + 1.0) - std::lgamma(n + p + 2.0);
  return std::exp((p + 1) * std::log(bn) + lg);
}

Complex contour_integral(std::span<const Complex> samples,
                         const ContourSpec& contour) {
  validate_contour(contour);
  if (samples.size() != static_cast<size_t>(contour.node_count)) {
    throw ConfigError("contour_integral: sample count != node_count");
  }
  // (1/2 pi i) \oint g = (radius/N) sum_j g(nu_j) e^{i theta_j}
  ComplexNeumaierSum acc;
  for (int j = 0; j < contour.node_count; ++j) {
    const double theta = kTwoPi * j / contour.node_count;
    acc.add(samples[static_cast<size_t>(j)] * std::polar(1.0, theta));
  }
  return acc.value() * (contour.radius / contour.node_count);
}

Complex compensated_sum(std::span<const Complex> terms) {
  ComplexNeumaierSum acc;
  for (const Complex& t : terms) acc.add(t);
  return acc.value();
}

}  // namespace szdc
