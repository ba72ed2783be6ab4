#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>

#include "szdc/function_model.hpp"
#include "szdc/moments.hpp"

namespace szdc {

// Admissible scale sequences must satisfy b_n -> infinity, b_n/n -> 0;
// per-sweep this is checked as b_n > 0 and b_n/n < 1 for every n used.
// ConstViolating (b_n = n) ships as a deliberately inadmissible rule.
enum class BnRule { Sqrt, Pow23, Log, ConstViolating, Explicit };

BnRule parse_bn_rule(const std::string& name);  // ParseError on unknown name
std::string bn_rule_name(BnRule rule);
double evaluate_bn(BnRule rule, double explicit_value, int n);
bool bn_admissible(BnRule rule, double explicit_value, std::span<const int> ns);

struct OperatorConfig {
  int n = 8;
  BnRule rule = BnRule::Sqrt;
  double explicit_bn = 0.0;
  double series_tol = 1e-12;
  int quadrature_nodes = 0;  // 0: pick from the integrand degree

  double bn() const { return evaluate_bn(rule, explicit_bn, n); }
  OperatorConfig with_n(int nn) const {
    OperatorConfig c = *this;
    c.n = nn;
    return c;
  }
};

// Shared get-or-build map of moment tables keyed by (n, b_n). Tables are
// immutable once published; concurrent builders for the same key race
// benignly and one result wins.
class MomentTableCache {
 public:
  std::shared_ptr<const MomentTable> get(int n, double bn, int p_max);
  void clear();

 private:
  std::mutex mu_;
  std::map<std::pair<int, double>, std::shared_ptr<const MomentTable>> tables_;
};

MomentTableCache& moment_cache();

// F_n f via the coefficient expansion sum_p c_p P_{n,p}(z) over the stored
// coefficients, compensated summation, cached moment table. Throws
// DomainError when |z| > f.R or Re(z) > b_n.
Complex apply(const TaylorFunction& f, const OperatorConfig& cfg, Complex z);

// order-th derivative of F_n f through the expansion's polynomial
// derivatives (the non-contour derivative path).
Complex apply_derivative(const TaylorFunction& f, const OperatorConfig& cfg,
                         Complex z, int order);

// Independent oracle: the k-sum with per-k inner integrals of the
// Bernstein weight against the stored series, each computed by
// double-double Gauss-Legendre quadrature (node count from cfg, else from
// the integrand degree), truncated like moment_direct. Evaluated at two
// node counts; QuadratureError if they disagree beyond 10*series_tol.
Complex apply_direct(const TaylorFunction& f, const OperatorConfig& cfg,
                     Complex z);

// b_n/(n+2) ((1 - 2z/b_n) f'(z) + z (1 - z/(2 b_n)) f''(z))
Complex voronovskaja_term(const TaylorFunction& f, const OperatorConfig& cfg,
                          Complex z);

// apply(f) - f - voronovskaja_term(f); identically zero for degree <= 1.
Complex residual(const TaylorFunction& f, const OperatorConfig& cfg, Complex z);

// M A r/(1 - A r); DivergenceError when A r >= 1.
double upper_constant(double M, double A, double r);

// 2M/((1-Ar) log(1/(Ar))) + 4M Ar/(1-Ar)^2. The second piece majorizes the
// finite sum to [alpha], so one constant is valid for every n.
double voronovskaja_constant(double M, double A, double r);

// alpha = (n+2)/b_n, the index where the residual recursion switches
// regime; exposed for diagnostics.
double voronovskaja_alpha(const OperatorConfig& cfg);

}  // namespace szdc
