#pragma once

#include <cmath>
#include <complex>

// Double-double arithmetic via error-free transformations (Dekker/Knuth,
// two_prod through fused multiply-add). Used by the direct-series oracles,
// whose alternating sums have condition numbers ~e^{2n|z|/b_n}; a plain
// compensated sum cannot reach the oracle tolerances there because the
// individual terms would carry ~1e-16 relative error. Everything here is
// ordinary binary64 arithmetic.

namespace szdc::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
  constexpr DD() = default;
  constexpr DD(double h) : hi(h) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}
  double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  const double lo = s.lo + a.lo;
  return quick_two_sum(s.hi, lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }
inline DD dd_sub(double a, DD b) { return dd_add(dd_neg(b), a); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  const double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  const double lo = p.lo + a.lo * b;
  return quick_two_sum(p.hi, lo);
}

inline DD dd_div(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  const double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), q3);
}

inline DD dd_div(DD a, double b) { return dd_div(a, DD{b}); }
inline DD dd_div(double a, double b) { return dd_div(DD{a}, DD{b}); }

// a^k by binary exponentiation, k >= 0; underflow to zero is acceptable
// (the true values are then below ~1e-320 and irrelevant to any sum).
inline DD dd_pow(DD a, long long k) {
  DD result{1.0};
  DD base = a;
  while (k > 0) {
    if (k & 1) result = dd_mul(result, base);
    base = dd_mul(base, base);
    k >>= 1;
  }
  return result;
}

struct DDComplex {
  DD re, im;
  constexpr DDComplex() = default;
  constexpr DDComplex(DD r, DD i) : re(r), im(i) {}
  DDComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline DDComplex ddc_add(DDComplex a, DDComplex b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline DDComplex ddc_mul(DDComplex a, DDComplex b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline DDComplex ddc_mul(DDComplex a, DD s) {
  return {dd_mul(a.re, s), dd_mul(a.im, s)};
}

inline DDComplex ddc_div(DDComplex a, double s) {
  return {dd_div(a.re, s), dd_div(a.im, s)};
}

}  // namespace szdc::detail
