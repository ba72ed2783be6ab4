#pragma once

#include <span>
#include <string>
#include <vector>

#include "szdc/numerics.hpp"

namespace szdc {

struct DecayCheck {
  bool ok = true;
  int first_violation = -1;
};

// Checks |c_p| <= M A^p/(2p)! for every stored p (with a 1e-12
// multiplicative slack for roundoff in the envelope itself); on failure
// reports the smallest violating index.
DecayCheck validate_decay(std::span<const Complex> coeffs, double M, double A);

// An analytic function represented by its Taylor coefficients plus the
// coefficient-decay certificate (M, A) on the disk of radius R. Immutable
// after construction; freely shareable across threads.
class TaylorFunction {
 public:
  // Validates A in (1/R, 1), R > 1 and the decay certificate; throws
  // CertificateError naming the first violating index.
  static TaylorFunction make_certified(std::vector<Complex> coeffs, double M,
                                       double A, double R);

  // Same shape checks, but the decay certificate is not enforced; the
  // function is flagged uncertified and bound suites treat (M, A) as
  // nominal only.
  static TaylorFunction make_uncertified(std::vector<Complex> coeffs, double M,
                                         double A, double R);

  // Presets. Polynomial presets fit M = max_p |c_p| (2p)!/A^p so the
  // certificate holds with equality at the binding index.
  static TaylorFunction monomial(int degree, double A = 0.4, double R = 4.0);
  static TaylorFunction polynomial(std::vector<Complex> coeffs, double A = 0.4,
                                   double R = 4.0);
  // c_p = A^p/(2p)! (cosh(sqrt(A z))), M = 1, R = 2/A; stored until
  // M (A R)^p/(2p)! < 1e-30, or through `truncate` when given.
  static TaylorFunction cosh_sqrt(double A, int truncate = -1);
  // c_p = 1/p! through p = 40 with the nominal certificate (M=1e6, A=0.9,
  // R=4), which fails at p = 6: a deliberate negative control.
  static TaylorFunction exp_uncertified();

  // Compensated sum of c_p z^p; throws DomainError for |z| > R.
  Complex eval(Complex z) const;

  // Same series without the disk check: extends the presets (all entire)
  // to the real interval [0, b_n] for the quadrature oracles.
  Complex eval_series(Complex z) const;

  // Termwise derivative, order <= 4. A certified input gets a refitted
  // certificate (same A); an uncertified input stays uncertified.
  TaylorFunction derivative(int order = 1) const;

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  double decay_m() const { return m_; }
  double decay_a() const { return a_; }
  double radius() const { return r_; }
  double tail_bound() const { return tail_bound_; }
  bool certified() const { return certified_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int top_index() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  TaylorFunction() = default;

  std::vector<Complex> coeffs_;
  double m_ = 1.0;
  double a_ = 0.5;
  double r_ = 2.0;
  double tail_bound_ = 0.0;
  bool certified_ = false;
};

// Function-spec documents (JSON): either
//   {"preset": "monomial"|"polynomial"|"cosh_sqrt"|"exp_uncertified", ...}
// or the explicit form
//   {"coeffs": [[re, im], ...], "M": m, "A": a, "R": r}.
// exp_uncertified (or an explicit document whose certificate fails) loads
// only with allow_uncertified set.
TaylorFunction load_function(const std::string& text,
                             bool allow_uncertified = false);
TaylorFunction load_function_file(const std::string& path,
                                  bool allow_uncertified = false);
std::string serialize_function(const TaylorFunction& f);

}  // namespace szdc
