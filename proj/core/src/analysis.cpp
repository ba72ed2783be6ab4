#include "szdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

namespace szdc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double disk_sup_norm(const std::function<Complex(Complex)>& g, double r,
                     int samples) {
  if (samples < 64) throw ConfigError("disk_sup_norm: samples must be >= 64");
  if (!(r > 0.0)) throw DomainError("disk_sup_norm: r must be positive");

  const auto magnitude = [&](double theta) {
    return std::abs(g(std::polar(r, theta)));
  };

  double best = -1.0;
  double best_theta = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta = kTwoPi * j / samples;
    const double v = magnitude(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }

  // golden-section refinement around the best node
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double invphi2 = 1.0 - invphi;
  double a = best_theta - kTwoPi / samples;
  double b = best_theta + kTwoPi / samples;
  double x1 = a + invphi2 * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = magnitude(x1);
  double f2 = magnitude(x2);
  while (b - a > 1e-13) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = magnitude(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = a + invphi2 * (b - a);
      f1 = magnitude(x1);
    }
  }
  return std::max({best, f1, f2});
}

namespace {

Complex cauchy_estimate(const std::function<Complex(Complex)>& g, int p,
                        Complex z, const ContourSpec& contour) {
  const std::vector<Complex> nodes = contour_nodes(contour);
  std::vector<Complex> samples(nodes.size());
  for (size_t j = 0; j < nodes.size(); ++j) {
    samples[j] = g(nodes[j]) / std::pow(nodes[j] - z, p + 1);
  }
  return std::tgamma(p + 1.0) * contour_integral(samples, contour);
}

}  // namespace

Complex cauchy_derivative(const std::function<Complex(Complex)>& g, int p,
                          Complex z, const ContourSpec& contour) {
  if (p < 1) throw ConfigError("cauchy_derivative: p must be >= 1");
  validate_contour(contour);
  if (!(std::abs(z - contour.center) < contour.radius)) {
    throw GeometryError("cauchy_derivative: z must lie strictly inside the contour");
  }
  ContourSpec c = contour;
  Complex prev = cauchy_estimate(g, p, z, c);
  while (2 * c.node_count <= 4096) {
    c.node_count *= 2;
    const Complex cur = cauchy_estimate(g, p, z, c);
    if (std::abs(cur - prev) <= 1e-11 * (1.0 + std::abs(cur))) {
      return cur;
    }
    prev = cur;
  }
  throw QuadratureError("cauchy_derivative: no convergence within 4096 nodes");
}

double derivative_error_bound(int p, double r, double r1, double C, int n,
                              double bn) {
  if (p < 1) throw DomainError("derivative_error_bound: p must be >= 1");
  if (!(r >= 1.0) || !(r < r1)) {
    throw GeometryError("derivative_error_bound: need 1 <= r < r1");
  }
  if (n < 1 || !(bn > 0.0) || !(C >= 0.0)) {
    throw DomainError("derivative_error_bound: invalid n, b_n or C");
  }
  return (bn + 1.0) * C * std::tgamma(p + 1.0) * r1 /
         ((n + 2.0) * std::pow(r1 - r, p + 1));
}

double lower_order_functional(const TaylorFunction& f,
                              const OperatorConfig& cfg, double r) {
  const double bn = cfg.bn();
  const TaylorFunction d1 = f.derivative(1);
  const TaylorFunction d2 = f.derivative(2);
  return disk_sup_norm(
      [&](Complex z) {
        return z * (1.0 - z / (2.0 * bn)) * d2.eval_series(z) +
               (1.0 - 2.0 * z / bn) * d1.eval_series(z);
      },
      r);
}

bool bernstein_inequality_check(const Polynomial& P, double r) {
  const int degree = P.degree();
  if (degree < 1) {
    throw ConfigError("bernstein_inequality_check: degree must be >= 1");
  }
  const Polynomial d = P.derivative();
  const double lhs = disk_sup_norm([&](Complex z) { return d.eval(z); }, r);
  const double rhs = disk_sup_norm([&](Complex z) { return P.eval(z); }, r);
  return lhs <= (degree / r) * rhs * (1.0 + 1e-9);
}

OrderFit fit_order(std::span<const ConvergenceRecord> records) {
  if (records.size() < 5) {
    throw DegenerateDataError("fit_order: need at least 5 records");
  }
  std::set<int> ns;
  for (const auto& rec : records) {
    if (!(rec.error > 0.0)) {
      throw DegenerateDataError("fit_order: errors must be strictly positive");
    }
    if (!ns.insert(rec.n).second) {
      throw DegenerateDataError("fit_order: n values must be distinct");
    }
  }

  const double count = static_cast<double>(records.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& rec : records) {
    mean_x += std::log(static_cast<double>(rec.n));
    mean_y += std::log(rec.error);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& rec : records) {
    const double dx = std::log(static_cast<double>(rec.n)) - mean_x;
    const double dy = std::log(rec.error) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }

  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.ratio_min = std::numeric_limits<double>::infinity();
  fit.ratio_max = 0.0;
  for (const auto& rec : records) {
    const double ratio = rec.error * (rec.n + 2.0) / (rec.bn + 1.0);
    fit.ratio_min = std::min(fit.ratio_min, ratio);
    fit.ratio_max = std::max(fit.ratio_max, ratio);
  }
  return fit;
}

}  // namespace szdc
