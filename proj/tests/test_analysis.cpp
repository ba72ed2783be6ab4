#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "szdc/analysis.hpp"

using szdc::Complex;
using szdc::ContourSpec;
using szdc::ConvergenceRecord;
using szdc::OperatorConfig;
using szdc::Polynomial;
using szdc::TaylorFunction;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OperatorConfig sqrt_cfg(int n) {
  OperatorConfig cfg;
  cfg.n = n;
  cfg.rule = szdc::BnRule::Sqrt;
  return cfg;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("disk sup norm of monomials and constants") {
  for (int p : {1, 3, 7}) {
    for (double r : {1.0, 2.5}) {
      const double sup = szdc::disk_sup_norm(
          [p](Complex z) { return std::pow(z, p); }, r);
      CHECK(sup == doctest::Approx(std::pow(r, p)).epsilon(1e-12));
    }
  }
  CHECK(szdc::disk_sup_norm([](Complex) { return Complex{-3.0, 4.0}; }, 1.7) ==
        doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(szdc::disk_sup_norm([](Complex) { return Complex{}; }, 1.0, 32),
                  szdc::ConfigError);
}

TEST_CASE("disk sup norm of the first-moment deviation") {
  for (int n : {4, 23}) {
    const double bn = std::sqrt(double(n));
    const szdc::MomentTable table = szdc::moment_recurrence(n, bn, 1);
    for (double r : {1.0, 2.0}) {
      const double sup = szdc::disk_sup_norm(
          [&](Complex z) { return table.polys[1].eval(z) - z; }, r);
      CHECK(sup == doctest::Approx((bn + 2.0 * r) / (n + 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cauchy derivative basics") {
  const ContourSpec contour{2.0, Complex{0.0, 0.0}, 256};
  const Complex d = szdc::cauchy_derivative(
      [](Complex nu) { return nu * nu; }, 1, Complex{0.5, 0.0}, contour);
  CHECK(std::abs(d - 1.0) <= 1e-12);

  const Complex dc = szdc::cauchy_derivative(
      [](Complex) { return Complex{4.0, -1.0}; }, 2, Complex{0.3, 0.4}, contour);
  CHECK(std::abs(dc) <= 1e-13);

  CHECK_THROWS_AS(szdc::cauchy_derivative([](Complex nu) { return nu; }, 1,
                                          Complex{2.0, 0.0}, contour),
                  szdc::GeometryError);
  CHECK_THROWS_AS(szdc::cauchy_derivative([](Complex nu) { return nu; }, 0,
                                          Complex{0.5, 0.0}, contour),
                  szdc::ConfigError);
}

TEST_CASE("two independent derivative paths agree on the operator image") {
  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.2);
  const OperatorConfig cfg = sqrt_cfg(25);
  const ContourSpec contour{2.0, Complex{0.0, 0.0}, 256};
  for (Complex z : {Complex{0.3, 0.0}, Complex{-0.7, 0.4}}) {
    const Complex via_contour = szdc::cauchy_derivative(
        [&](Complex nu) { return szdc::apply(f, cfg, nu); }, 1, z, contour);
    const Complex via_coeffs = szdc::apply_derivative(f, cfg, z, 1);
    CHECK(std::abs(via_contour - via_coeffs) <= 1e-9);
  }
}

TEST_CASE("derivative error bound") {
  CHECK(szdc::derivative_error_bound(1, 1.5, 2.0, 2.0 / 3.0, 48, std::sqrt(48.0)) ==
        doctest::Approx(0.8456750112293875).epsilon(1e-12));
  CHECK_THROWS_AS(szdc::derivative_error_bound(1, 2.0, 2.0, 1.0, 8, 2.0),
                  szdc::GeometryError);
  CHECK_THROWS_AS(szdc::derivative_error_bound(1, 2.5, 2.0, 1.0, 8, 2.0),
                  szdc::GeometryError);
  // growth in p once r1 - r < 1
  double prev = 0.0;
  for (int p = 1; p <= 4; ++p) {
    const double v = szdc::derivative_error_bound(p, 1.5, 2.0, 1.0, 16, 4.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("lower-order functional") {
  const TaylorFunction e1 = TaylorFunction::monomial(1);
  OperatorConfig cfg;
  cfg.rule = szdc::BnRule::Explicit;
  cfg.explicit_bn = std::sqrt(50.0);
  cfg.n = 50;
  for (double r : {1.0, 1.5}) {
    CHECK(szdc::lower_order_functional(e1, cfg, r) ==
          doctest::Approx(1.0 + 2.0 * r / cfg.explicit_bn).epsilon(1e-12));
  }
  const TaylorFunction constant = TaylorFunction::polynomial({{3.0, 0.0}});
  CHECK(szdc::lower_order_functional(constant, cfg, 1.0) == 0.0);
  const TaylorFunction cosh = TaylorFunction::cosh_sqrt(0.2);
  CHECK(szdc::lower_order_functional(cosh, cfg, 1.0) > 0.0);
}

TEST_CASE("bernstein inequality: extremal monomials and random polynomials") {
  for (int p : {1, 4, 9}) {
    for (double r : {1.0, 2.0}) {
      CHECK(szdc::bernstein_inequality_check(Polynomial::monomial(p), r));
    }
  }
  CHECK_THROWS_AS(
      szdc::bernstein_inequality_check(Polynomial{{Complex{2.0, 0.0}}}, 1.0),
      szdc::ConfigError);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int degree = 1; degree <= 10; ++degree) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Complex> coeffs(degree + 1);
      for (auto& c : coeffs) c = Complex{unit(rng), unit(rng)};
      while (std::abs(coeffs.back()) < 0.2) {
        coeffs.back() = Complex{unit(rng), unit(rng)};
      }
      CHECK(szdc::bernstein_inequality_check(Polynomial{std::move(coeffs)}, 1.5));
    }
  }
}

TEST_CASE("order fit on synthetic data") {
  std::vector<ConvergenceRecord> records;
  for (int n = 8; n <= 512; n *= 2) {
    ConvergenceRecord rec;
    rec.n = n;
    rec.bn = std::sqrt(double(n));
    rec.error = 3.0 / std::sqrt(double(n));
    records.push_back(rec);
  }
  const szdc::OrderFit fit = szdc::fit_order(records);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.ratio_min > 0.0);

  for (auto& rec : records) rec.error = 0.25;  // constant errors
  CHECK(szdc::fit_order(records).slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("order fit rejects degenerate data") {
  std::vector<ConvergenceRecord> few(4);
  for (int i = 0; i < 4; ++i) {
    few[i].n = 8 << i;
    few[i].error = 1.0;
    few[i].bn = 1.0;
  }
  CHECK_THROWS_AS(szdc::fit_order(few), szdc::DegenerateDataError);

  std::vector<ConvergenceRecord> zeros(6);
  for (int i = 0; i < 6; ++i) {
    zeros[i].n = 8 << i;
    zeros[i].error = 0.0;
    zeros[i].bn = 1.0;
  }
  CHECK_THROWS_AS(szdc::fit_order(zeros), szdc::DegenerateDataError);

  std::vector<ConvergenceRecord> dup(6);
  for (int i = 0; i < 6; ++i) {
    dup[i].n = 8;
    dup[i].error = 1.0;
    dup[i].bn = 1.0;
  }
  CHECK_THROWS_AS(szdc::fit_order(dup), szdc::DegenerateDataError);
}

TEST_CASE("derivative sweep has a two-sided ratio window") {
  // simultaneous-approximation order: ratio stays within a factor 20
  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.2);
  const ContourSpec contour{2.0, Complex{0.0, 0.0}, 256};
  for (int p : {1, 2}) {
    std::vector<ConvergenceRecord> records;
    for (int n = 8; n <= 512; n *= 2) {
      const OperatorConfig cfg = sqrt_cfg(n);
      const TaylorFunction fp = f.derivative(p);
      std::map<std::pair<double, double>, Complex> memo;
      auto g = [&](Complex nu) {
        const auto key = std::make_pair(nu.real(), nu.imag());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Complex v = szdc::apply(f, cfg, nu);
        memo.emplace(key, v);
        return v;
      };
      double worst = 0.0;
      for (int j = 0; j < 64; ++j) {
        const Complex z = std::polar(1.5, kTwoPi * j / 64);
        const Complex num = szdc::cauchy_derivative(g, p, z, contour);
        worst = std::max(worst, std::abs(num - fp.eval(z)));
      }
      ConvergenceRecord rec;
      rec.n = n;
      rec.bn = cfg.bn();
      rec.error = worst;
      rec.derivative_order = p;
      records.push_back(rec);
    }
    const szdc::OrderFit fit = szdc::fit_order(records);
    CHECK(fit.ratio_min > 0.0);
    CHECK(fit.ratio_max / fit.ratio_min <= 20.0);
  }
}

}  // TEST_SUITE
