#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "szdc/function_model.hpp"

using szdc::Complex;
using szdc::TaylorFunction;

namespace {

// extended-precision series reference for the cosh_sqrt preset
long double cosh_sqrt_reference(long double a, long double x) {
  long double term = 1.0L, sum = 1.0L;
  for (int p = 1; p <= 60; ++p) {
    term *= a * x / ((2.0L * p - 1.0L) * (2.0L * p));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("function_model") {

TEST_CASE("preset evaluation") {
  const TaylorFunction e3 = TaylorFunction::monomial(3);
  CHECK(e3.eval(Complex{2.0, 0.0}) == Complex{8.0, 0.0});

  const TaylorFunction one = TaylorFunction::polynomial({{1.0, 0.0}});
  CHECK(one.eval(Complex{0.7, -0.3}) == Complex{1.0, 0.0});

  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.2);
  const Complex v = f.eval(Complex{1.0, 0.0});
  CHECK(v.real() ==
        doctest::Approx(double(cosh_sqrt_reference(0.2L, 1.0L))).epsilon(1e-14));
  CHECK(v.real() == doctest::Approx(std::cosh(std::sqrt(0.2))).epsilon(1e-13));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("evaluation outside the disk is rejected") {
  const TaylorFunction e3 = TaylorFunction::monomial(3);  // R = 4
  CHECK_THROWS_AS(e3.eval(Complex{4.5, 0.0}), szdc::DomainError);
  CHECK_NOTHROW(e3.eval(Complex{4.0, 0.0}));
  CHECK(e3.eval_series(Complex{10.0, 0.0}) == Complex{1000.0, 0.0});
}

TEST_CASE("derivative coefficients") {
  const TaylorFunction e2 = TaylorFunction::monomial(2);
  const TaylorFunction d = e2.derivative(1);
  REQUIRE(d.coeffs().size() == 2);
  CHECK(d.coeffs()[0] == Complex{0.0, 0.0});
  CHECK(d.coeffs()[1] == Complex{2.0, 0.0});

  const TaylorFunction c = TaylorFunction::polynomial({{5.0, 0.0}});
  CHECK(c.derivative(1).is_zero());

  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.3);
  const TaylorFunction fp = f.derivative(1);
  for (size_t p = 0; p + 1 < f.coeffs().size(); ++p) {
    const Complex expected = f.coeffs()[p + 1] * double(p + 1);
    CHECK(std::abs(fp.coeffs()[p] - expected) == 0.0);
  }
  CHECK(fp.certified());
}

TEST_CASE("derivative matches central finite differences") {
  const TaylorFunction presets[] = {
      TaylorFunction::cosh_sqrt(0.2), TaylorFunction::monomial(3),
      TaylorFunction::polynomial({{1.0, 0.0}, {0.5, 0.0}, {-0.25, 0.0}, {0.125, 0.0}})};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double h = 1e-5;
  for (const TaylorFunction& f : presets) {
    const TaylorFunction fp = f.derivative(1);
    for (int trial = 0; trial < 20; ++trial) {
      Complex z{unit(rng), unit(rng)};
      while (std::abs(z) > 1.0) z = Complex{unit(rng), unit(rng)};
      const Complex fd =
          (f.eval(z + Complex{h, 0.0}) - f.eval(z - Complex{h, 0.0})) /
          (2.0 * h);
      CHECK(std::abs(fd - fp.eval(z)) <= 1e-7);
    }
  }
}

TEST_CASE("decay certificate validation") {
  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.2);
  const szdc::DecayCheck own =
      szdc::validate_decay(f.coeffs(), f.decay_m(), f.decay_a());
  CHECK(own.ok);  // equality case

  std::vector<Complex> expc;
  double c = 1.0;
  expc.emplace_back(c, 0.0);
  for (int p = 1; p <= 60; ++p) {
    c /= p;
    expc.emplace_back(c, 0.0);
  }
  const szdc::DecayCheck bad = szdc::validate_decay(expc, 1e6, 0.9);
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_violation == 6);

  CHECK(szdc::validate_decay({}, 1.0, 0.5).ok);  // zero function

  CHECK_THROWS_AS(TaylorFunction::make_certified(expc, 1e6, 0.9, 4.0),
                  szdc::CertificateError);
}

TEST_CASE("certificate is enforced on every constructed function") {
  for (const TaylorFunction& f :
       {TaylorFunction::cosh_sqrt(0.35), TaylorFunction::monomial(5),
        TaylorFunction::polynomial({{0.5, 0.5}, {0.0, -2.0}, {3.0, 0.0}}),
        TaylorFunction::cosh_sqrt(0.2).derivative(2)}) {
    CHECK(szdc::validate_decay(f.coeffs(), f.decay_m(), f.decay_a()).ok);
  }
}

TEST_CASE("cosh_sqrt tail bound is negligible") {
  const TaylorFunction f = TaylorFunction::cosh_sqrt(0.2, 30);
  CHECK(f.tail_bound() < 1e-30);
  CHECK(f.coeffs().size() == 31);
}

TEST_CASE("derivative of an uncertified function stays uncertified") {
  const TaylorFunction expf = TaylorFunction::exp_uncertified();
  const TaylorFunction d = expf.derivative(1);
  CHECK_FALSE(d.certified());
  CHECK(d.decay_m() == expf.decay_m());
  CHECK(d.decay_a() == expf.decay_a());
  // d/dz e^z = e^z: same leading coefficients
  for (size_t p = 0; p + 1 < expf.coeffs().size(); ++p) {
    const Complex expected = expf.coeffs()[p + 1] * double(p + 1);
    CHECK(d.coeffs()[p] == expected);
  }
}

TEST_CASE("load_function presets and errors") {
  const TaylorFunction e1 = szdc::load_function(R"({"preset": "monomial", "degree": 1})");
  REQUIRE(e1.coeffs().size() == 2);
  CHECK(e1.coeffs()[1] == Complex{1.0, 0.0});

  const TaylorFunction f =
      szdc::load_function(R"({"preset": "cosh_sqrt", "A": 0.2, "truncate": 30})");
  CHECK(f.coeffs().size() == 31);
  CHECK(f.decay_m() == 1.0);
  CHECK(f.tail_bound() < 1e-30);

  CHECK_THROWS_AS(szdc::load_function("not json at all"), szdc::ParseError);
  CHECK_THROWS_AS(szdc::load_function(R"({"preset": "unknown"})"), szdc::ParseError);
  CHECK_THROWS_AS(szdc::load_function(R"({"coeffs": [[1, 0]]})"), szdc::ParseError);

  CHECK_THROWS_AS(szdc::load_function(R"({"preset": "exp_uncertified"})"),
                  szdc::CertificateError);
  const TaylorFunction expf =
      szdc::load_function(R"({"preset": "exp_uncertified"})", true);
  CHECK_FALSE(expf.certified());
  CHECK(expf.coeffs().size() == 41);
}

TEST_CASE("serialize / load round trip is bit exact") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> coeffs;
  double envelope = 1.0;  // M A^p/(2p)! with M=1, A=0.5
  for (int p = 0; p <= 12; ++p) {
    coeffs.emplace_back(unit(rng) * envelope, unit(rng) * envelope);
    envelope *= 0.5 / ((2.0 * p + 1.0) * (2.0 * p + 2.0));
  }
  const TaylorFunction f = TaylorFunction::make_certified(coeffs, 2.0, 0.5, 3.0);
  const TaylorFunction g = szdc::load_function(szdc::serialize_function(f));
  REQUIRE(g.coeffs().size() == f.coeffs().size());
  for (size_t p = 0; p < f.coeffs().size(); ++p) {
    CHECK(std::memcmp(&g.coeffs()[p], &f.coeffs()[p], sizeof(Complex)) == 0);
  }
  CHECK(g.decay_m() == f.decay_m());
  CHECK(g.decay_a() == f.decay_a());
  CHECK(g.radius() == f.radius());

  const TaylorFunction h = szdc::load_function(
      szdc::serialize_function(TaylorFunction::cosh_sqrt(0.2)));
  const TaylorFunction ref = TaylorFunction::cosh_sqrt(0.2);
  REQUIRE(h.coeffs().size() == ref.coeffs().size());
  for (size_t p = 0; p < ref.coeffs().size(); ++p) {
    CHECK(h.coeffs()[p] == ref.coeffs()[p]);
  }
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(TaylorFunction::make_certified({{1.0, 0.0}}, 1.0, 0.5, 0.9),
                  szdc::ConfigError);  // R <= 1
  CHECK_THROWS_AS(TaylorFunction::make_certified({{1.0, 0.0}}, 1.0, 0.1, 4.0),
                  szdc::ConfigError);  // A <= 1/R
  CHECK_THROWS_AS(TaylorFunction::make_certified({{1.0, 0.0}}, -1.0, 0.5, 4.0),
                  szdc::ConfigError);
  CHECK_THROWS_AS(TaylorFunction::cosh_sqrt(1.2), szdc::ConfigError);
}

}  // TEST_SUITE
