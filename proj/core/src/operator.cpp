#include "szdc/operator.hpp"

#include <algorithm>
#include <cmath>

#include "szdc/detail/double_double.hpp"
#include "szdc/detail/quadrature.hpp"

namespace szdc {

BnRule parse_bn_rule(const std::string& name) {
  if (name == "sqrt") return BnRule::Sqrt;
  if (name == "pow23") return BnRule::Pow23;
  if (name == "log") return BnRule::Log;
  if (name == "const-violating") return BnRule::ConstViolating;
  throw ParseError("unknown b_n rule '" + name + "'");
}

std::string bn_rule_name(BnRule rule) {
  switch (rule) {
    case BnRule::Sqrt: return "sqrt";
    case BnRule::Pow23: return "pow23";
    case BnRule::Log: return "log";
    case BnRule::ConstViolating: return "const-violating";
    case BnRule::Explicit: return "explicit";
  }
  return "?";
}

double evaluate_bn(BnRule rule, double explicit_value, int n) {
  switch (rule) {
    case BnRule::Sqrt: return std::sqrt(static_cast<double>(n));
    case BnRule::Pow23: return std::pow(static_cast<double>(n), 2.0 / 3.0);
    case BnRule::Log: return std::log(n + 2.0);
    case BnRule::ConstViolating: return static_cast<double>(n);
    case BnRule::Explicit: return explicit_value;
  }
  return 0.0;
}

bool bn_admissible(BnRule rule, double explicit_value,
                   std::span<const int> ns) {
  for (int n : ns) {
    if (n < 1) return false;
    const double bn = evaluate_bn(rule, explicit_value, n);
    if (!(bn > 0.0) || !(bn / n < 1.0)) return false;
  }
  return true;
}

std::shared_ptr<const MomentTable> MomentTableCache::get(int n, double bn,
                                                         int p_max) {
  const std::pair<int, double> key{n, bn};
  int build_p = p_max;
  {
    std::scoped_lock lock(mu_);
    auto it = tables_.find(key);
    if (it != tables_.end()) {
      if (it->second->p_max() >= p_max) return it->second;
      build_p = std::max(build_p, it->second->p_max());
    }
  }
  auto table = std::make_shared<const MomentTable>(
      moment_recurrence(n, bn, build_p));
  std::scoped_lock lock(mu_);
  auto [it, inserted] = tables_.emplace(key, table);
  if (!inserted && it->second->p_max() < table->p_max()) {
    it->second = table;
  }
  return it->second;
}

void MomentTableCache::clear() {
  std::scoped_lock lock(mu_);
  tables_.clear();
}

MomentTableCache& moment_cache() {
  static MomentTableCache cache;
  return cache;
}

namespace {

void check_apply_domain(const TaylorFunction& f, const OperatorConfig& cfg,
                        Complex z) {
  if (std::abs(z) > f.radius()) {
    throw DomainError("apply: |z| exceeds the function's disk radius");
  }
  if (z.real() > cfg.bn()) {
    throw DomainError("apply: Re(z) exceeds b_n");
  }
}

}  // namespace

Complex apply(const TaylorFunction& f, const OperatorConfig& cfg, Complex z) {
  check_apply_domain(f, cfg, z);
  if (f.is_zero()) return {0.0, 0.0};
  auto table = moment_cache().get(cfg.n, cfg.bn(), f.top_index());
  ComplexNeumaierSum acc;
  const auto& coeffs = f.coeffs();
  for (size_t p = 0; p < coeffs.size(); ++p) {
    acc.add(coeffs[p] * table->polys[p].eval(z));
  }
  return acc.value();
}

Complex apply_derivative(const TaylorFunction& f, const OperatorConfig& cfg,
                         Complex z, int order) {
  check_apply_domain(f, cfg, z);
  if (order < 1 || order > 4) {
    throw ConfigError("apply_derivative: order must lie in [1, 4]");
  }
  if (f.is_zero()) return {0.0, 0.0};
  auto table = moment_cache().get(cfg.n, cfg.bn(), f.top_index());
  ComplexNeumaierSum acc;
  const auto& coeffs = f.coeffs();
  for (size_t p = 0; p < coeffs.size(); ++p) {
    Polynomial d = table->polys[p];
    for (int o = 0; o < order; ++o) d = d.derivative();
    acc.add(coeffs[p] * d.eval(z));
  }
  return acc.value();
}

namespace {

using detail::DD;
using detail::DDComplex;

// f at the real point t (DD), two real compensated Horner passes over the
// stored binary64 coefficients (which both oracle sides share exactly).
DDComplex eval_series_dd(const std::vector<Complex>& coeffs, DD t) {
  DD re{0.0}, im{0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    re = detail::dd_add(detail::dd_mul(re, t), it->real());
    im = detail::dd_add(detail::dd_mul(im, t), it->imag());
  }
  return {re, im};
}

// One resolution of the direct k-sum. Everything downstream of the stored
// coefficients runs in double-double; e^{-u} and (n+1)/b_n stay common
// factors in plain double.
Complex direct_sum(const TaylorFunction& f, int n, double bn, Complex z,
                   int nodes, double tol) {
  const auto& coeffs = f.coeffs();
  const int deg = f.top_index();
  const auto& rule = detail::dd_gauss_legendre(nodes);
  const size_t g = rule.nodes.size();

  // s_i on [0,1], t_i = b_n s_i, f(t_i), and the (1-s_i)^m power table.
  std::vector<DD> s(g), w(g);
  std::vector<DDComplex> fval(g);
  for (size_t i = 0; i < g; ++i) {
    s[i] = detail::dd_mul(detail::dd_add(rule.nodes[i], 1.0), 0.5);
    w[i] = rule.weights[i];
    fval[i] = eval_series_dd(coeffs, detail::dd_mul(s[i], bn));
  }
  std::vector<std::vector<DD>> one_minus_s_pow(g);
  for (size_t i = 0; i < g; ++i) {
    auto& row = one_minus_s_pow[i];
    row.resize(static_cast<size_t>(n) + 1);
    row[0] = DD{1.0};
    const DD q = detail::dd_sub(1.0, s[i]);
    for (int m = 1; m <= n; ++m) row[static_cast<size_t>(m)] = detail::dd_mul(row[static_cast<size_t>(m - 1)], q);
  }

  const DDComplex u_dd{detail::dd_div(detail::dd_mul(DD{z.real()}, double(n)), bn),
                       detail::dd_div(detail::dd_mul(DD{z.imag()}, double(n)), bn)};
  const Complex u = u_dd.value();
  const double lambda = std::abs(u);
  const double prefactor_mag = (n + 1.0) / bn * std::exp(-u.real());

  // Majorant bookkeeping: |J_k| <= sum_q |c_q| I_{n,k,q} =: Jhat_k, with
  // I_{n,k+1,q}/I_{n,k,q} = (k+q+1)/(k+1) <= (k+deg+1)/(k+1).
  std::vector<double> ihat(coeffs.size());
  for (size_t q = 0; q < coeffs.size(); ++q) {
    ihat[q] = std::abs(coeffs[q]) * bernstein_moment_integral(n, 0, static_cast<int>(q), bn);
  }

  // Literal-path state (k <= n).
  std::vector<DD> spow(g, DD{1.0});  // s_i^k
  DD binom{1.0};                     // C(n, k)
  // Transformed-path state (k > n): C(k+q, q) per q.
  std::vector<DD> kq_binom;

  DDComplex acc;
  DDComplex powk{DD{1.0}, DD{0.0}};  // u^k / k!
  double pois_mag = 1.0;             // |u|^k / k!
  constexpr long long kCap = 1000000;
  const double half_bn = 0.5 * bn;

  long long k = 0;
  while (true) {
    DDComplex jk;
    if (k <= n) {
      // J_k = (b_n/2) C(n,k) sum_i w_i s_i^k (1-s_i)^{n-k} f(t_i)
      DD jre{0.0}, jim{0.0};
      const size_t m = static_cast<size_t>(n - k);
      for (size_t i = 0; i < g; ++i) {
        const DD basis = detail::dd_mul(detail::dd_mul(w[i], spow[i]),
                                        one_minus_s_pow[i][m]);
        jre = detail::dd_add(jre, detail::dd_mul(basis, fval[i].re));
        jim = detail::dd_add(jim, detail::dd_mul(basis, fval[i].im));
      }
      const DD scale = detail::dd_mul(binom, half_bn);
      jk = DDComplex{detail::dd_mul(jre, scale), detail::dd_mul(jim, scale)};
    } else {
      // Past k = n the literal weight vanishes identically while the
      // operator's normalization needs the continued integrals; those
      // equal the quadrature of (1-t/b)^n sum_q c_q C(k+q,q) t^q.
      if (kq_binom.empty()) {
        kq_binom.resize(coeffs.size());
        for (size_t q = 0; q < coeffs.size(); ++q) {
          DD b{1.0};
          for (size_t j = 1; j <= q; ++j) {
            b = detail::dd_div(detail::dd_mul(b, double(k + static_cast<long long>(j))),
                               double(j));
          }
          kq_binom[q] = b;
        }
      }
      std::vector<DD> hre(coeffs.size()), him(coeffs.size());
      for (size_t q = 0; q < coeffs.size(); ++q) {
        hre[q] = detail::dd_mul(kq_binom[q], coeffs[q].real());
        him[q] = detail::dd_mul(kq_binom[q], coeffs[q].imag());
      }
      DD jre{0.0}, jim{0.0};
      for (size_t i = 0; i < g; ++i) {
        const DD t = detail::dd_mul(s[i], bn);
        DD are{0.0}, aim{0.0};
        for (size_t q = coeffs.size(); q-- > 0;) {
          are = detail::dd_add(detail::dd_mul(are, t), hre[q]);
          aim = detail::dd_add(detail::dd_mul(aim, t), him[q]);
        }
        const DD basis =
            detail::dd_mul(w[i], one_minus_s_pow[i][static_cast<size_t>(n)]);
        jre = detail::dd_add(jre, detail::dd_mul(basis, are));
        jim = detail::dd_add(jim, detail::dd_mul(basis, aim));
      }
      jk = DDComplex{detail::dd_mul(jre, half_bn),
                     detail::dd_mul(jim, half_bn)};
    }

    acc = ddc_add(acc, ddc_mul(powk, jk));

    double jhat = 0.0;
    for (double v : ihat) jhat += v;
    if (static_cast<double>(k) >= lambda) {
      const double rho = lambda * (k + deg + 1.0) / ((k + 1.0) * (k + 1.0));
      if (rho >= 0.0 && rho < 1.0) {
        const double tail = prefactor_mag * pois_mag * jhat * rho / (1.0 - rho);
        if (tail < tol) break;
      }
    }

    // advance to k+1
    powk = ddc_div(ddc_mul(powk, u_dd), static_cast<double>(k + 1));
    pois_mag *= lambda / (k + 1.0);
    for (size_t q = 0; q < coeffs.size(); ++q) {
      ihat[q] *= (k + static_cast<double>(q) + 1.0) / (k + 1.0);
    }
    if (k <= n) {
      for (size_t i = 0; i < g; ++i) spow[i] = detail::dd_mul(spow[i], s[i]);
      binom = detail::dd_div(detail::dd_mul(binom, double(n - k)), double(k + 1));
    } else {
      for (size_t q = 0; q < coeffs.size(); ++q) {
        kq_binom[q] = detail::dd_div(
            detail::dd_mul(kq_binom[q], double(k + static_cast<long long>(q) + 1)),
            double(k + 1));
      }
    }
    ++k;
    if (k > kCap) {
      throw TruncationError("apply_direct: truncation index exceeds 1e6");
    }
  }

  const Complex sum = acc.value();
  return (n + 1.0) / bn * std::exp(-u) * sum;
}

}  // namespace

Complex apply_direct(const TaylorFunction& f, const OperatorConfig& cfg,
                     Complex z) {
  check_apply_domain(f, cfg, z);
  if (f.is_zero()) return {0.0, 0.0};
  const int n = cfg.n;
  const double bn = cfg.bn();
  const int deg = f.top_index();
  const int auto_nodes = (n + deg) / 2 + 4;
  const int base = cfg.quadrature_nodes > 0 ? cfg.quadrature_nodes : auto_nodes;
  const Complex v1 = direct_sum(f, n, bn, z, base, cfg.series_tol);
  const Complex v2 = direct_sum(f, n, bn, z, 2 * base, cfg.series_tol);
  if (std::abs(v1 - v2) > 10.0 * cfg.series_tol * (1.0 + std::abs(v2))) {
    throw QuadratureError(
        "apply_direct: quadrature resolutions disagree beyond 10*series_tol");
  }
  return v2;
}

Complex voronovskaja_term(const TaylorFunction& f, const OperatorConfig& cfg,
                          Complex z) {
  check_apply_domain(f, cfg, z);
  const double bn = cfg.bn();
  const TaylorFunction d1 = f.derivative(1);
  const TaylorFunction d2 = f.derivative(2);
  const Complex fp = d1.eval(z);
  const Complex fpp = d2.eval(z);
  return bn / (cfg.n + 2.0) *
         ((1.0 - 2.0 * z / bn) * fp + z * (1.0 - z / (2.0 * bn)) * fpp);
}

Complex residual(const TaylorFunction& f, const OperatorConfig& cfg,
                 Complex z) {
  return apply(f, cfg, z) - f.eval(z) - voronovskaja_term(f, cfg, z);
}

double upper_constant(double M, double A, double r) {
  if (!(r >= 1.0)) throw DomainError("upper_constant: r must be >= 1");
  if (!(M >= 0.0)) throw DomainError("upper_constant: M must be >= 0");
  if (!(A > 0.0)) throw DomainError("upper_constant: A must be positive");
  if (A * r >= 1.0) {
    throw DivergenceError("upper_constant: A*r >= 1, series diverges");
  }
  return M * A * r / (1.0 - A * r);
}

double voronovskaja_constant(double M, double A, double r) {
  if (!(M >= 0.0)) throw DomainError("voronovskaja_constant: M must be >= 0");
  if (!(A > 0.0) || !(r > 0.0)) {
    throw DomainError("voronovskaja_constant: A and r must be positive");
  }
  const double q = A * r;
  if (q >= 1.0) {
    throw DivergenceError("voronovskaja_constant: A*r >= 1, series diverges");
  }
  return 2.0 * M / ((1.0 - q) * std::log(1.0 / q)) +
         4.0 * M * q / ((1.0 - q) * (1.0 - q));
}

double voronovskaja_alpha(const OperatorConfig& cfg) {
  return (cfg.n + 2.0) / cfg.bn();
}

}  // namespace szdc
