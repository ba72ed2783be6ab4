#pragma once

#include <utility>
#include <vector>

#include "szdc/numerics.hpp"

namespace szdc {

// Dense complex polynomial, coefficients in ascending degree. Canonical
// form: the leading coefficient is nonzero, or the coefficient list is
// empty (the zero polynomial).
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial monomial(int degree, Complex scale = {1.0, 0.0}) {
    std::vector<Complex> c(static_cast<size_t>(degree) + 1, Complex{0.0, 0.0});
    c.back() = scale;
    return Polynomial(std::move(c));
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Complex leading_coeff() const {
    return coeffs_.empty() ? Complex{0.0, 0.0} : coeffs_.back();
  }

  Complex eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * z + *it;
    }
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t j = 1; j < coeffs_.size(); ++j) {
      d[j - 1] = coeffs_[j] * static_cast<double>(j);
    }
    return Polynomial(std::move(d));
  }

  // (a z + b) * P, as exact coefficient shifts; the moment recurrence is
  // built from this so the only rounding is in the rational prefactors.
  Polynomial mul_linear(Complex a, Complex b) const {
    if (coeffs_.empty()) return Polynomial();
    std::vector<Complex> out(coeffs_.size() + 1, Complex{0.0, 0.0});
    for (size_t j = 0; j < coeffs_.size(); ++j) {
      out[j + 1] += a * coeffs_[j];
      out[j] += b * coeffs_[j];
    }
    return Polynomial(std::move(out));
  }

  Polynomial scaled(Complex s) const {
    std::vector<Complex> out(coeffs_);
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
    std::vector<Complex> out(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()),
                             Complex{0.0, 0.0});
    for (size_t j = 0; j < lhs.coeffs_.size(); ++j) out[j] += lhs.coeffs_[j];
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[j] += rhs.coeffs_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) {
    return lhs + rhs.scaled({-1.0, 0.0});
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{0.0, 0.0}) {
      coeffs_.pop_back();
    }
  }

  std::vector<Complex> coeffs_;
};

}  // namespace szdc
