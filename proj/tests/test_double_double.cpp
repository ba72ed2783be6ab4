#include <doctest.h>

#include <cmath>

#include "szdc/detail/double_double.hpp"
#include "szdc/detail/quadrature.hpp"

using namespace szdc::detail;

TEST_SUITE("double_double") {

TEST_CASE("addition keeps what double drops") {
  DD s = dd_add(DD{1.0}, 1e-20);
  CHECK(s.hi == 1.0);
  CHECK(s.lo == 1e-20);
  s = dd_add(s, -1.0);
  CHECK(s.value() == 1e-20);
}

TEST_CASE("two_prod captures the exact product error") {
  const double a = 1.0 + std::pow(2.0, -30);
  const double b = 1.0 - std::pow(2.0, -30);
  DD p = two_prod(a, b);
  // a*b = 1 - 2^-60 exactly; the high word rounds to 1, the low word
  // holds the rest
  CHECK(p.hi == 1.0);
  CHECK(p.lo == -std::pow(2.0, -60));
}

TEST_CASE("division round trip") {
  DD third = dd_div(DD{1.0}, DD{3.0});
  DD back = dd_mul(third, DD{3.0});
  CHECK(std::abs(back.value() - 1.0) < 1e-30);
  CHECK(std::abs(back.hi - 1.0) <= 1e-16);
}

TEST_CASE("binary power") {
  DD p = dd_pow(DD{2.0}, 40);
  CHECK(p.hi == std::pow(2.0, 40));
  CHECK(p.lo == 0.0);
  DD q = dd_pow(DD{1e-4}, 100);  // underflows: acceptable, must stay finite
  CHECK(std::isfinite(q.hi));
}

TEST_CASE("complex multiply") {
  DDComplex a{DD{1.0}, DD{2.0}};
  DDComplex b{DD{3.0}, DD{-1.0}};
  DDComplex c = ddc_mul(a, b);
  CHECK(c.re.value() == 5.0);   // 1*3 - 2*(-1)
  CHECK(c.im.value() == 5.0);   // 1*(-1) + 2*3
}

TEST_CASE("gauss-legendre integrates monomials exactly") {
  for (int count : {4, 16, 33, 64}) {
    const auto& rule = dd_gauss_legendre(count);
    REQUIRE(rule.nodes.size() == static_cast<size_t>(count));
    for (int k = 0; k <= 2 * count - 1; ++k) {
      DD acc{0.0};
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        acc = dd_add(acc, dd_mul(rule.weights[i], dd_pow(rule.nodes[i], k)));
      }
      const double expected = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      CHECK(std::abs(acc.value() - expected) < 1e-28 * (1 << std::min(k, 20)));
    }
  }
}

TEST_CASE("gauss-legendre nodes are symmetric and weights positive") {
  const auto& rule = dd_gauss_legendre(24);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.weights[i].value() > 0.0);
    const double mirrored = rule.nodes[rule.nodes.size() - 1 - i].value();
    CHECK(rule.nodes[i].value() == doctest::Approx(-mirrored).epsilon(1e-15));
  }
}

}  // TEST_SUITE
