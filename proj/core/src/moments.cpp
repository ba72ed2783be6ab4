#include "szdc/moments.hpp"

#include <cmath>

#include "szdc/detail/double_double.hpp"

namespace szdc {

MomentTable moment_recurrence(int n, double bn, int p_max) {
  if (n < 1) throw DomainError("moment_recurrence: n must be >= 1");
  if (!(bn > 0.0)) throw DomainError("moment_recurrence: b_n must be positive");
  if (p_max < 0) throw ConfigError("moment_recurrence: p_max must be >= 0");
  if (p_max > 64) throw ConfigError("moment_recurrence: p_max is capped at 64");

  MomentTable table;
  table.n = n;
  table.bn = bn;
  table.polys.reserve(static_cast<size_t>(p_max) + 1);
  table.polys.emplace_back(std::vector<Complex>{Complex{1.0, 0.0}});
  for (int p = 0; p < p_max; ++p) {
    const double denom = static_cast<double>(n) + p + 2.0;
    const Polynomial& cur = table.polys.back();
    const Polynomial first =
        cur.derivative().mul_linear(Complex{bn / denom, 0.0}, Complex{0.0, 0.0});
    const Polynomial second = cur.mul_linear(
        Complex{n / denom, 0.0}, Complex{(p + 1.0) * bn / denom, 0.0});
    table.polys.push_back(first + second);
  }
  return table;
}

Complex moment_direct(int n, double bn, int p, Complex z, double tol) {
  if (n < 1) throw DomainError("moment_direct: n must be >= 1");
  if (!(bn > 0.0)) throw DomainError("moment_direct: b_n must be positive");
  if (p < 0) throw DomainError("moment_direct: p must be >= 0");
  if (!(tol > 0.0)) throw DomainError("moment_direct: tol must be positive");

  using detail::DD;
  using detail::DDComplex;

  // sum_k w_k(z) I_{n,k,p} = e^{-u} I_0 sum_k (u^k/k!) R_k with
  // R_k = (k+p)!/(k! p!) -- e^{-u} and I_0 stay common factors in plain
  // double (common factors are not amplified by the cancellation), the
  // alternating sum itself runs in double-double.
  const DDComplex u_dd{detail::dd_div(detail::dd_mul(DD{z.real()}, double(n)), bn),
                       detail::dd_div(detail::dd_mul(DD{z.imag()}, double(n)), bn)};
  const Complex u = u_dd.value();
  const double lambda = std::abs(u);
  const double i0 = bernstein_moment_integral(n, 0, p, bn);
  const double prefactor_mag =
      (n + 1.0) / bn * std::exp(-u.real()) * i0;

  DDComplex acc;
  DDComplex powk{DD{1.0}, DD{0.0}};  // u^k / k!
  DD ratio{1.0};                     // (k+p)!/(k! p!)
  double majorant = 1.0;             // |u|^k/k! * ratio, double estimate
  long long k = 0;
  constexpr long long kCap = 1000000;
  while (true) {
    acc = ddc_add(acc, ddc_mul(powk, ratio));
    // geometric tail domination once past the Poisson mode
    if (static_cast<double>(k) >= lambda) {
      const double rho =
          lambda * (k + p + 1.0) / ((k + 1.0) * (k + 1.0));
      if (rho < 1.0) {
        const double tail = prefactor_mag * majorant * rho / (1.0 - rho);
        if (tail < tol) break;
      }
    }
    const double step = (k + p + 1.0) / (k + 1.0);
    powk = ddc_div(ddc_mul(powk, u_dd), static_cast<double>(k + 1));
    ratio = detail::dd_div(detail::dd_mul(ratio, double(k + p + 1)),
                           double(k + 1));
    majorant *= lambda / (k + 1.0) * step;
    ++k;
    if (k > kCap) {
      throw TruncationError("moment_direct: truncation index exceeds 1e6");
    }
  }

  const Complex sum = acc.value();
  return (n + 1.0) / bn * std::exp(-u) * i0 * sum;
}

double moment_error_bound(int n, double bn, int p, double r) {
  if (n < 1) throw DomainError("moment_error_bound: n must be >= 1");
  if (!(bn > 0.0)) throw DomainError("moment_error_bound: b_n must be positive");
  if (p < 1) throw DomainError("moment_error_bound: p must be >= 1");
  if (!(r >= 1.0)) throw DomainError("moment_error_bound: r must be >= 1");
  return std::exp(std::lgamma(2.0 * p + 1.0) + p * std::log(r) +
                  std::log(bn + 1.0) - std::log(n + 2.0));
}

}  // namespace szdc
