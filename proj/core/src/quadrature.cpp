#include "szdc/detail/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "szdc/errors.hpp"

namespace szdc::detail {

namespace {

// P_count(x) and P_{count-1}(x) by the three-term recurrence.
struct LegendrePair {
  DD p;   // P_m
  DD pm;  // P_{m-1}
};

LegendrePair legendre(int count, DD x) {
  DD p0{1.0};
  DD p1 = x;
  for (int m = 1; m < count; ++m) {
    // (m+1) P_{m+1} = (2m+1) x P_m - m P_{m-1}
    DD next = dd_div(
        dd_sub(dd_mul(dd_mul(x, p1), 2.0 * m + 1.0), dd_mul(p0, double(m))),
        double(m + 1));
    p0 = p1;
    p1 = next;
  }
  return {p1, p0};
}

DDQuadratureRule build(int count) {
  DDQuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(count));
  rule.weights.resize(static_cast<size_t>(count));
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi seed, then Newton: 4 double rounds, 3 DD rounds.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    for (int it = 0; it < 4; ++it) {
      LegendrePair lp = legendre(count, DD{x});
      const double p = lp.p.value();
      const double dp =
          count * (x * p - lp.pm.value()) / (x * x - 1.0);
      x -= p / dp;
    }
    DD xd{x};
    for (int it = 0; it < 3; ++it) {
      LegendrePair lp = legendre(count, xd);
      // P'(x) = count (x P - P_{m-1}) / (x^2 - 1)
      DD dp = dd_div(
          dd_mul(dd_sub(dd_mul(xd, lp.p), lp.pm), double(count)),
          dd_sub(dd_mul(xd, xd), DD{1.0}));
      xd = dd_sub(xd, dd_div(lp.p, dp));
    }
    LegendrePair lp = legendre(count, xd);
    DD dp = dd_div(dd_mul(dd_sub(dd_mul(xd, lp.p), lp.pm), double(count)),
                   dd_sub(dd_mul(xd, xd), DD{1.0}));
    // w = 2 / ((1 - x^2) P'(x)^2)
    DD w = dd_div(DD{2.0},
                  dd_mul(dd_sub(DD{1.0}, dd_mul(xd, xd)), dd_mul(dp, dp)));
    rule.nodes[static_cast<size_t>(i)] = dd_neg(xd);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.nodes[static_cast<size_t>(count - 1 - i)] = xd;
    rule.weights[static_cast<size_t>(count - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const DDQuadratureRule& dd_gauss_legendre(int count) {
  if (count < 1) throw ConfigError("gauss_legendre: count must be >= 1");
  static std::mutex mu;
  static std::map<int, DDQuadratureRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(count);
  if (it == cache.end()) {
    it = cache.emplace(count, build(count)).first;
  }
  return it->second;
}

}  // namespace szdc::detail
