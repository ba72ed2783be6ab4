#include "szdc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace szdc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string CsvTable::to_csv() const {
  std::ostringstream out;
  for (size_t j = 0; j < header.size(); ++j) {
    if (j) out << ',';
    out << header[j];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  return out.str();
}

bool CommandReport::all_pass() const {
  for (const auto& a : assertions) {
    if (!a.pass) return false;
  }
  return true;
}

std::string CommandReport::summary_json() const {
  nlohmann::json doc;
  doc["command"] = command;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& a : assertions) {
    nlohmann::json item;
    item["name"] = a.name;
    item["pass"] = a.pass;
    item["value"] = a.value;
    item["threshold"] = a.threshold;
    item["relation"] = a.relation;
    checks.push_back(std::move(item));
  }
  doc["assertions"] = std::move(checks);
  for (const auto& [key, value] : info) doc[key] = value;
  doc["pass"] = all_pass();
  return doc.dump(2) + "\n";
}

std::vector<int> expand_n_range(const NRange& range) {
  if (range.start < 1 || range.stop < range.start) {
    throw ConfigError("n range: need 1 <= start <= stop");
  }
  std::vector<int> ns;
  if (range.geometric) {
    if (range.step < 2) throw ConfigError("geometric n range: step must be >= 2");
    for (long long n = range.start; n <= range.stop; n *= range.step) {
      ns.push_back(static_cast<int>(n));
    }
  } else {
    if (range.step < 1) throw ConfigError("linear n range: step must be >= 1");
    for (long long n = range.start; n <= range.stop; n += range.step) {
      ns.push_back(static_cast<int>(n));
    }
  }
  return ns;
}

TaylorFunction resolve_function(const FunctionChoice& choice,
                                bool allow_uncertified) {
  const std::string& name = choice.name_or_path;
  TaylorFunction f = [&] {
    if (name == "cosh_sqrt") {
      return TaylorFunction::cosh_sqrt(choice.A.value_or(0.2));
    }
    if (name == "monomial") {
      return TaylorFunction::monomial(3, choice.A.value_or(0.4));
    }
    if (name == "polynomial") {
      return TaylorFunction::polynomial(
          {{1.0, 0.0}, {0.5, 0.0}, {-0.25, 0.0}, {0.125, 0.0}},
          choice.A.value_or(0.4));
    }
    if (name == "exp_uncertified") {
      if (!allow_uncertified) {
        throw CertificateError(
            "exp_uncertified violates the decay certificate at index 6; "
            "pass --allow-uncertified to load it anyway",
            6);
      }
      return TaylorFunction::exp_uncertified();
    }
    return load_function_file(name, allow_uncertified);
  }();
  if (choice.M && f.certified()) {
    f = TaylorFunction::make_certified(f.coeffs(), *choice.M, f.decay_a(),
                                       f.radius());
  }
  return f;
}

namespace {

template <typename Fn>
auto sweep_parallel(const std::vector<int>& ns, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, int>> {
  using R = std::invoke_result_t<Fn&, int>;
  std::vector<std::future<R>> futures;
  futures.reserve(ns.size());
  for (int n : ns) {
    futures.push_back(std::async(std::launch::async, [&fn, n] { return fn(n); }));
  }
  std::vector<R> out;
  out.reserve(ns.size());
  for (auto& fut : futures) out.push_back(fut.get());
  return out;
}

// prefix least-squares slopes of log(error) vs log(n); NaN until two
// usable points exist
std::vector<double> running_slopes(std::span<const ConvergenceRecord> records) {
  std::vector<double> slopes(records.size(),
                             std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 1; i < records.size(); ++i) {
    double mean_x = 0.0, mean_y = 0.0;
    bool usable = true;
    for (size_t j = 0; j <= i; ++j) {
      if (!(records[j].error > 0.0)) {
        usable = false;
        break;
      }
      mean_x += std::log(static_cast<double>(records[j].n));
      mean_y += std::log(records[j].error);
    }
    if (!usable) continue;
    mean_x /= static_cast<double>(i + 1);
    mean_y /= static_cast<double>(i + 1);
    double sxx = 0.0, sxy = 0.0;
    for (size_t j = 0; j <= i; ++j) {
      const double dx = std::log(static_cast<double>(records[j].n)) - mean_x;
      sxx += dx * dx;
      sxy += dx * (std::log(records[j].error) - mean_y);
    }
    if (sxx > 0.0) slopes[i] = sxy / sxx;
  }
  return slopes;
}

CsvTable records_table(std::span<const ConvergenceRecord> records) {
  CsvTable table;
  table.header = {"n", "b_n", "error", "bound", "ratio", "slope_running"};
  const std::vector<double> slopes = running_slopes(records);
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    table.rows.push_back({std::to_string(rec.n), format17(rec.bn),
                          format17(rec.error), format17(rec.bound),
                          format17(rec.ratio), format17(slopes[i])});
  }
  return table;
}

void check_admissible(BnRule rule, double explicit_bn,
                      const std::vector<int>& ns) {
  if (!bn_admissible(rule, explicit_bn, ns)) {
    throw ConfigError("b_n rule '" + bn_rule_name(rule) +
                      "' is inadmissible on this n range (need b_n > 0 and "
                      "b_n/n < 1)");
  }
}

double sup_apply_error(const TaylorFunction& f, const OperatorConfig& cfg,
                       double r, int samples = 256) {
  return disk_sup_norm(
      [&](Complex z) { return apply(f, cfg, z) - f.eval(z); }, r, samples);
}

double sup_residual(const TaylorFunction& f, const OperatorConfig& cfg,
                    double r, int samples = 256) {
  return disk_sup_norm([&](Complex z) { return residual(f, cfg, z); }, r,
                       samples);
}

// operator image with per-node memoization: the contour nodes repeat
// across z samples and across trapezoid refinement.
struct MemoizedOperatorImage {
  const TaylorFunction& f;
  OperatorConfig cfg;
  std::map<std::pair<double, double>, Complex> cache;

  Complex operator()(Complex nu) {
    const std::pair<double, double> key{nu.real(), nu.imag()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Complex v = apply(f, cfg, nu);
    cache.emplace(key, v);
    return v;
  }
};

// max over `samples` boundary points of |(F_n f)^(p) - f^(p)|, the
// operator side obtained through the Cauchy integral on |nu| = r1 and the
// function side through its differentiated coefficients.
double derivative_sweep_error(const TaylorFunction& f,
                              const OperatorConfig& cfg, int p, double r,
                              double r1, int samples = 128) {
  MemoizedOperatorImage g{f, cfg, {}};
  auto g_fn = [&g](Complex nu) { return g(nu); };
  const TaylorFunction fp = f.derivative(p);
  const ContourSpec contour{r1, Complex{0.0, 0.0}, 256};
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Complex z = std::polar(r, kTwoPi * j / samples);
    const Complex num = cauchy_derivative(g_fn, p, z, contour);
    worst = std::max(worst, std::abs(num - fp.eval(z)));
  }
  return worst;
}

Assertion make_assertion(std::string name, bool pass, double value,
                         double threshold, std::string relation) {
  Assertion a;
  a.name = std::move(name);
  a.pass = pass;
  a.value = value;
  a.threshold = threshold;
  a.relation = std::move(relation);
  return a;
}

}  // namespace

CommandReport run_moments(const ExperimentConfig& cfg) {
  CommandReport report;
  report.command = "moments";
  const int n = cfg.moment_n;
  if (cfg.p_max < 0 || cfg.p_max > 64) {
    throw ConfigError("moments: p_max must lie in [0, 64]");
  }
  const std::vector<int> single{n};
  check_admissible(cfg.rule, cfg.explicit_bn, single);
  const double bn = evaluate_bn(cfg.rule, cfg.explicit_bn, n);
  const double r = cfg.r;
  const MomentTable table = moment_recurrence(n, bn, cfg.p_max);

  CsvTable csv;
  csv.header = {"p", "degree", "leading_coeff", "sup_error", "bound",
                "max_oracle_delta"};
  double worst_scaled_delta = 0.0;
  double worst_leading = 0.0;
  int bound_failures = 0;
  for (int p = 0; p <= cfg.p_max; ++p) {
    const Polynomial& poly = table.polys[static_cast<size_t>(p)];
    const double sup_err =
        p == 0 ? 0.0
               : disk_sup_norm(
                     [&](Complex z) {
                       return poly.eval(z) - std::pow(z, p);
                     },
                     r);
    const double bound = p == 0 ? 0.0 : moment_error_bound(n, bn, p, r);
    double max_delta = 0.0;
    for (int j = 0; j < 16; ++j) {
      const Complex z = std::polar(r, kTwoPi * j / 16);
      const Complex direct = moment_direct(n, bn, p, z, 1e-11);
      const double delta = std::abs(poly.eval(z) - direct);
      max_delta = std::max(max_delta, delta);
      worst_scaled_delta =
          std::max(worst_scaled_delta, delta / (1.0 + std::abs(direct)));
    }
    const double expected_leading =
        std::exp(p * std::log(static_cast<double>(n)) +
                 std::lgamma(n + 2.0) - std::lgamma(n + p + 2.0));
    worst_leading = std::max(
        worst_leading, std::abs(poly.leading_coeff().real() - expected_leading) /
                           expected_leading);
    if (poly.degree() != p) {
      throw Error("moment table degree mismatch");  // structural, never expected
    }
    if (p >= 1 && n >= 4 && sup_err > bound) ++bound_failures;
    csv.rows.push_back({std::to_string(p), std::to_string(poly.degree()),
                        format17(poly.leading_coeff().real()),
                        format17(sup_err), format17(bound),
                        format17(max_delta)});
  }
  report.tables.emplace_back("moments", std::move(csv));
  report.assertions.push_back(make_assertion(
      "oracle-equivalence", worst_scaled_delta <= 1e-9, worst_scaled_delta,
      1e-9, "<="));
  report.assertions.push_back(make_assertion(
      "leading-coefficient", worst_leading <= 1e-12, worst_leading, 1e-12,
      "<="));
  report.assertions.push_back(make_assertion(
      "moment-bound-rows", bound_failures == 0, bound_failures, 0, "<="));
  report.info.emplace_back("n", std::to_string(n));
  report.info.emplace_back("b_n", format17(bn));
  report.info.emplace_back("bn_rule", bn_rule_name(cfg.rule));
  return report;
}

CommandReport run_converge(const ExperimentConfig& cfg) {
  CommandReport report;
  report.command = "converge";
  const TaylorFunction f =
      resolve_function(cfg.function, cfg.allow_uncertified);
  if (!(cfg.r >= 1.0) || cfg.r > f.radius()) {
    throw ConfigError("converge: need 1 <= r <= function radius");
  }
  const std::vector<int> ns = expand_n_range(cfg.ns);
  check_admissible(cfg.rule, cfg.explicit_bn, ns);
  const double C = upper_constant(f.decay_m(), f.decay_a(), cfg.r);

  OperatorConfig base;
  base.rule = cfg.rule;
  base.explicit_bn = cfg.explicit_bn;
  base.series_tol = cfg.series_tol;
  const std::vector<ConvergenceRecord> records =
      sweep_parallel(ns, [&](int n) {
        const OperatorConfig ocfg = base.with_n(n);
        const double bn = ocfg.bn();
        ConvergenceRecord rec;
        rec.n = n;
        rec.bn = bn;
        rec.error = sup_apply_error(f, ocfg, cfg.r);
        rec.bound = C * (bn + 1.0) / (n + 2.0);
        rec.ratio = rec.error * (n + 2.0) / (bn + 1.0);
        return rec;
      });

  int failures = 0;
  for (const auto& rec : records) {
    if (rec.n >= cfg.n0 && rec.error > rec.bound) ++failures;
  }
  report.tables.emplace_back("sweep", records_table(records));
  report.assertions.push_back(make_assertion(
      "upper-bound-rows", failures == 0, failures, 0, "<="));

  const OrderFit fit = fit_order(records);
  report.info.emplace_back("slope", format17(fit.slope));
  report.info.emplace_back("ratio_min", format17(fit.ratio_min));
  report.info.emplace_back("ratio_max", format17(fit.ratio_max));
  report.info.emplace_back("upper_constant", format17(C));
  report.info.emplace_back("function", cfg.function.name_or_path);
  report.info.emplace_back("bn_rule", bn_rule_name(cfg.rule));
  report.info.emplace_back("certified", f.certified() ? "true" : "false");
  return report;
}

CommandReport run_voronovskaja(const ExperimentConfig& cfg) {
  CommandReport report;
  report.command = "voronovskaja";
  const TaylorFunction f =
      resolve_function(cfg.function, cfg.allow_uncertified);
  if (!(cfg.r >= 1.0) || cfg.r > f.radius()) {
    throw ConfigError("voronovskaja: need 1 <= r <= function radius");
  }
  const std::vector<int> ns = expand_n_range(cfg.ns);
  check_admissible(cfg.rule, cfg.explicit_bn, ns);
  const double L = voronovskaja_constant(f.decay_m(), f.decay_a(), cfg.r);

  OperatorConfig base;
  base.rule = cfg.rule;
  base.explicit_bn = cfg.explicit_bn;
  base.series_tol = cfg.series_tol;
  const std::vector<ConvergenceRecord> records =
      sweep_parallel(ns, [&](int n) {
        const OperatorConfig ocfg = base.with_n(n);
        const double bn = ocfg.bn();
        ConvergenceRecord rec;
        rec.n = n;
        rec.bn = bn;
        rec.error = sup_residual(f, ocfg, cfg.r);
        rec.bound = L * (bn + 1.0) * (bn + 1.0) / ((n + 2.0) * (n + 2.0));
        rec.ratio = rec.error * (n + 2.0) / (bn + 1.0);
        return rec;
      });

  int failures = 0;
  double max_error = 0.0;
  for (const auto& rec : records) {
    if (rec.n >= cfg.n0 && rec.error > rec.bound) ++failures;
    max_error = std::max(max_error, rec.error);
  }
  report.tables.emplace_back("sweep", records_table(records));
  report.assertions.push_back(make_assertion(
      "voronovskaja-bound-rows", failures == 0, failures, 0, "<="));

  const bool exact = max_error <= 1e-13;
  report.info.emplace_back("exact_cancellation", exact ? "true" : "false");
  if (!exact) {
    const OrderFit fit = fit_order(records);
    report.info.emplace_back("slope", format17(fit.slope));
  }
  report.info.emplace_back("voronovskaja_constant", format17(L));
  report.info.emplace_back("function", cfg.function.name_or_path);
  report.info.emplace_back("bn_rule", bn_rule_name(cfg.rule));
  return report;
}

CommandReport run_derivative(const ExperimentConfig& cfg) {
  CommandReport report;
  report.command = "derivative";
  const TaylorFunction f =
      resolve_function(cfg.function, cfg.allow_uncertified);
  const int p = cfg.derivative_order;
  if (p < 1 || p > 4) throw ConfigError("derivative: p must lie in [1, 4]");
  if (!(cfg.r >= 1.0) || !(cfg.r < cfg.r1) || !(cfg.r1 < f.radius())) {
    throw ConfigError("derivative: need 1 <= r < r1 < function radius");
  }
  const std::vector<int> ns = expand_n_range(cfg.ns);
  check_admissible(cfg.rule, cfg.explicit_bn, ns);
  const double C1 = upper_constant(f.decay_m(), f.decay_a(), cfg.r1);

  OperatorConfig base;
  base.rule = cfg.rule;
  base.explicit_bn = cfg.explicit_bn;
  base.series_tol = cfg.series_tol;
  const std::vector<ConvergenceRecord> records =
      sweep_parallel(ns, [&](int n) {
        const OperatorConfig ocfg = base.with_n(n);
        const double bn = ocfg.bn();
        ConvergenceRecord rec;
        rec.n = n;
        rec.bn = bn;
        rec.error = derivative_sweep_error(f, ocfg, p, cfg.r, cfg.r1);
        rec.bound = derivative_error_bound(p, cfg.r, cfg.r1, C1, n, bn);
        rec.ratio = rec.error * (n + 2.0) / (bn + 1.0);
        rec.derivative_order = p;
        return rec;
      });

  int failures = 0;
  for (const auto& rec : records) {
    if (rec.n >= cfg.n0 && rec.error > rec.bound) ++failures;
  }
  report.tables.emplace_back("sweep", records_table(records));
  report.assertions.push_back(make_assertion(
      "derivative-bound-rows", failures == 0, failures, 0, "<="));

  const OrderFit fit = fit_order(records);
  report.info.emplace_back("slope", format17(fit.slope));
  report.info.emplace_back("ratio_min", format17(fit.ratio_min));
  report.info.emplace_back("ratio_max", format17(fit.ratio_max));
  report.info.emplace_back("derivative_order", std::to_string(p));
  report.info.emplace_back("function", cfg.function.name_or_path);
  report.info.emplace_back("bn_rule", bn_rule_name(cfg.rule));
  return report;
}

bool VerifyAllReport::all_pass() const {
  for (const auto& c : criteria) {
    if (!c.pass) return false;
  }
  return true;
}

std::string VerifyAllReport::summary_json() const {
  nlohmann::json doc;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : criteria) {
    nlohmann::json item;
    item["index"] = c.index;
    item["name"] = c.name;
    item["pass"] = c.pass;
    item["detail"] = c.detail;
    list.push_back(std::move(item));
  }
  doc["criteria"] = std::move(list);
  doc["all_pass"] = all_pass();
  return doc.dump(2) + "\n";
}

namespace {

struct SweepKey {
  std::string preset;
  BnRule rule;
  double r;
};

std::string ratio_label(double r) { return r == 1.0 ? "r1" : "r2"; }

// finds the first integer n with (b_n+1)/(n+2) L <= phi(n)/2
int find_n_star(const TaylorFunction& f, BnRule rule, double r, double L,
                int n0) {
  const auto condition = [&](int n) {
    OperatorConfig cfg;
    cfg.rule = rule;
    cfg.n = n;
    const double bn = cfg.bn();
    const double phi = lower_order_functional(f, cfg, r);
    return (bn + 1.0) / (n + 2.0) * L <= 0.5 * phi;
  };
  int hi = n0;
  while (!condition(hi)) {
    if (hi > (1 << 24)) throw Error("n* search exceeded 2^24");
    hi *= 2;
  }
  if (hi == n0) return n0;
  int lo = hi / 2;
  while (lo + 1 < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (condition(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::max(hi, n0);
}

}  // namespace

VerifyAllReport run_verify_all(std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  VerifyAllReport report;

  const TaylorFunction cosh = TaylorFunction::cosh_sqrt(0.2);
  const TaylorFunction mono3 = TaylorFunction::monomial(3);
  const TaylorFunction poly3 = TaylorFunction::polynomial(
      {{1.0, 0.0}, {0.5, 0.0}, {-0.25, 0.0}, {0.125, 0.0}});

  // [1] recurrence vs direct-series moments
  {
    const auto start = clock::now();
    const std::vector<int> ns{5, 10, 25, 50};
    const std::vector<double> worst = sweep_parallel(ns, [&](int n) {
      const double bn = std::sqrt(static_cast<double>(n));
      const MomentTable table = moment_recurrence(n, bn, 10);
      double w = 0.0;
      for (int p = 0; p <= 10; ++p) {
        for (double r : {1.0, 2.0}) {
          for (int j = 0; j < 64; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / 64);
            const Complex direct = moment_direct(n, bn, p, z, 1e-11);
            const double delta =
                std::abs(table.polys[static_cast<size_t>(p)].eval(z) - direct);
            w = std::max(w, delta / (1.0 + std::abs(direct)));
          }
        }
      }
      return w;
    });
    const double worst_delta = *std::max_element(worst.begin(), worst.end());
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    CriterionResult c;
    c.index = 1;
    c.name = "moment-oracle-equivalence";
    c.pass = worst_delta <= 1e-9 && secs <= 10.0;
    c.detail = "max scaled deviation " + format17(worst_delta) +
               " (tol 1e-09, runtime limit 10 s)";
    report.criteria.push_back(std::move(c));
  }

  // [2] first-moment closed forms
  {
    double worst = 0.0;
    bool pi0_exact = true;
    for (int n : {4, 10, 50}) {
      for (BnRule rule : {BnRule::Sqrt, BnRule::Pow23}) {
        const double bn = evaluate_bn(rule, 0.0, n);
        const MomentTable table = moment_recurrence(n, bn, 1);
        const auto& p0 = table.polys[0].coeffs();
        if (p0.size() != 1 || p0[0] != Complex{1.0, 0.0}) pi0_exact = false;
        const auto& p1 = table.polys[1].coeffs();
        const double c0 = bn / (n + 2.0);
        const double c1 = n / (n + 2.0);
        worst = std::max(worst, std::abs(p1[0].real() - c0) / c0);
        worst = std::max(worst, std::abs(p1[1].real() - c1) / c1);
        for (double r : {1.0, 2.0}) {
          const double expected = (bn + 2.0 * r) / (n + 2.0);
          const double sup = disk_sup_norm(
              [&](Complex z) { return table.polys[1].eval(z) - z; }, r);
          worst = std::max(worst, std::abs(sup - expected) / expected);
        }
      }
    }
    CriterionResult c;
    c.index = 2;
    c.name = "first-moment-closed-forms";
    c.pass = pi0_exact && worst <= 1e-12;
    c.detail = "max relative deviation " + format17(worst) +
               " (tol 1e-12), constant moment exact: " +
               (pi0_exact ? "yes" : "no");
    report.criteria.push_back(std::move(c));
  }

  // [3] upper-bound suite, with sweeps kept for criteria 4..7
  std::map<std::string, std::vector<ConvergenceRecord>> upper_sweeps;
  std::map<std::string, std::vector<ConvergenceRecord>> resid_sweeps;
  double crit3_secs = 0.0;
  {
    const auto start = clock::now();
    const std::vector<int> ns = expand_n_range({4, 512, true, 2});
    int failures = 0;
    int rows = 0;
    const std::vector<std::pair<std::string, const TaylorFunction*>> presets{
        {"cosh_sqrt", &cosh}, {"monomial3", &mono3}, {"poly3", &poly3}};
    for (const auto& [pname, fptr] : presets) {
      const TaylorFunction& fn = *fptr;
      for (BnRule rule : {BnRule::Sqrt, BnRule::Pow23}) {
        for (double r : {1.0, 2.0}) {
          const double C = upper_constant(fn.decay_m(), fn.decay_a(), r);
          const double L =
              voronovskaja_constant(fn.decay_m(), fn.decay_a(), r);
          OperatorConfig base;
          base.rule = rule;
          auto recs = sweep_parallel(ns, [&fn, &base, C, L, r](int n) {
            const OperatorConfig ocfg = base.with_n(n);
            const double bn = ocfg.bn();
            ConvergenceRecord upper;
            upper.n = n;
            upper.bn = bn;
            upper.error = sup_apply_error(fn, ocfg, r);
            upper.bound = C * (bn + 1.0) / (n + 2.0);
            upper.ratio = upper.error * (n + 2.0) / (bn + 1.0);
            ConvergenceRecord resid;
            resid.n = n;
            resid.bn = bn;
            resid.error = sup_residual(fn, ocfg, r);
            resid.bound = L * (bn + 1.0) * (bn + 1.0) / ((n + 2.0) * (n + 2.0));
            resid.ratio = resid.error * (n + 2.0) / (bn + 1.0);
            return std::pair{upper, resid};
          });
          const std::string key =
              pname + "_" + bn_rule_name(rule) + "_" + ratio_label(r);
          auto& ups = upper_sweeps[key];
          auto& res = resid_sweeps[key];
          for (auto& [upper, resid] : recs) {
            if (upper.error > upper.bound) ++failures;
            ++rows;
            ups.push_back(upper);
            res.push_back(resid);
          }
          report.tables.emplace_back("upper_bound_" + key, records_table(ups));
        }
      }
    }
    crit3_secs = std::chrono::duration<double>(clock::now() - start).count();
    CriterionResult c;
    c.index = 3;
    c.name = "upper-bound-suite";
    c.pass = failures == 0 && crit3_secs <= 60.0;
    c.detail = std::to_string(failures) + " of " + std::to_string(rows) +
               " rows exceed the bound (runtime limit 60 s)";
    report.criteria.push_back(std::move(c));
  }

  // [4] Voronovskaja residual suite + exact cancellation for e_1
  {
    int failures = 0;
    int rows = 0;
    for (const auto& [key, recs] : resid_sweeps) {
      for (const auto& rec : recs) {
        if (rec.error > rec.bound) ++failures;
        ++rows;
      }
      report.tables.emplace_back("voronovskaja_" + key, records_table(recs));
    }
    const TaylorFunction e1 = TaylorFunction::monomial(1);
    double worst_e1 = 0.0;
    OperatorConfig cfg;
    cfg.rule = BnRule::Sqrt;
    for (int n : {8, 64, 512}) {
      const OperatorConfig ocfg = cfg.with_n(n);
      for (double r : {1.0, 2.0}) {
        for (int j = 0; j < 256; ++j) {
          const Complex z = std::polar(r, kTwoPi * j / 256);
          worst_e1 = std::max(worst_e1, std::abs(residual(e1, ocfg, z)));
        }
      }
    }
    CriterionResult c;
    c.index = 4;
    c.name = "voronovskaja-residual-suite";
    c.pass = failures == 0 && worst_e1 <= 1e-13;
    c.detail = std::to_string(failures) + " of " + std::to_string(rows) +
               " rows exceed the bound; max |residual(e_1)| = " +
               format17(worst_e1) + " (tol 1e-13)";
    report.criteria.push_back(std::move(c));
  }

  // [5] order-fit windows on the n = 8..512 sqrt sweep
  double crit5_slope = 0.0;
  {
    auto tail_from = [](const std::vector<ConvergenceRecord>& recs, int n_min) {
      std::vector<ConvergenceRecord> out;
      for (const auto& rec : recs) {
        if (rec.n >= n_min) out.push_back(rec);
      }
      return out;
    };
    const auto ups = tail_from(upper_sweeps.at("cosh_sqrt_sqrt_r1"), 8);
    const auto res = tail_from(resid_sweeps.at("cosh_sqrt_sqrt_r1"), 8);
    const OrderFit up_fit = fit_order(ups);
    const OrderFit re_fit = fit_order(res);
    crit5_slope = up_fit.slope;
    const bool up_ok = up_fit.slope >= -0.55 && up_fit.slope <= -0.45;
    const bool re_ok = re_fit.slope >= -1.1 && re_fit.slope <= -0.9;
    CriterionResult c;
    c.index = 5;
    c.name = "order-fit-windows";
    c.pass = up_ok && re_ok;
    c.detail = "error slope " + format17(up_fit.slope) +
               " (window -0.5 +/- 0.05), residual slope " +
               format17(re_fit.slope) + " (window -1.0 +/- 0.1)";
    report.criteria.push_back(std::move(c));
  }

  // [6] two-sided order window + lower-estimate floor past n*
  {
    std::vector<ConvergenceRecord> window_rows;
    for (const auto& rec : upper_sweeps.at("cosh_sqrt_sqrt_r1")) {
      if (rec.n >= 8) window_rows.push_back(rec);
    }
    const OrderFit fit = fit_order(window_rows);
    const double window = fit.ratio_max / fit.ratio_min;
    const double L = voronovskaja_constant(cosh.decay_m(), cosh.decay_a(), 1.0);
    const int n_star = find_n_star(cosh, BnRule::Sqrt, 1.0, L, 4);
    bool floor_ok = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int n : {n_star, 2 * n_star, 4 * n_star}) {
      OperatorConfig cfg;
      cfg.rule = BnRule::Sqrt;
      cfg.n = n;
      const double bn = cfg.bn();
      const double err = sup_apply_error(cosh, cfg, 1.0);
      const double ratio = err * (n + 2.0) / (bn + 1.0);
      const double floor = 0.25 * lower_order_functional(cosh, cfg, 1.0);
      if (ratio < floor) floor_ok = false;
      worst_margin = std::min(worst_margin, ratio / floor);
    }
    CriterionResult c;
    c.index = 6;
    c.name = "exact-order-window-and-floor";
    c.pass = window <= 20.0 && floor_ok;
    c.detail = "ratio window " + format17(window) +
               " (limit 20), n* = " + std::to_string(n_star) +
               ", min ratio/floor margin past n* = " + format17(worst_margin);
    report.criteria.push_back(std::move(c));
  }

  // [7] derivative bounds via Cauchy integrals + order match
  {
    const std::vector<int> ns = expand_n_range({4, 512, true, 2});
    const double C1 = upper_constant(cosh.decay_m(), cosh.decay_a(), 2.0);
    int failures = 0;
    int rows = 0;
    bool slopes_ok = true;
    std::string slope_text;
    for (int p : {1, 2}) {
      OperatorConfig base;
      base.rule = BnRule::Sqrt;
      auto recs = sweep_parallel(ns, [&, p](int n) {
        const OperatorConfig ocfg = base.with_n(n);
        const double bn = ocfg.bn();
        ConvergenceRecord rec;
        rec.n = n;
        rec.bn = bn;
        rec.error = derivative_sweep_error(cosh, ocfg, p, 1.5, 2.0);
        rec.bound = derivative_error_bound(p, 1.5, 2.0, C1, n, bn);
        rec.ratio = rec.error * (n + 2.0) / (bn + 1.0);
        rec.derivative_order = p;
        return rec;
      });
      for (const auto& rec : recs) {
        if (rec.error > rec.bound) ++failures;
        ++rows;
      }
      std::vector<ConvergenceRecord> fit_rows;
      for (const auto& rec : recs) {
        if (rec.n >= 8) fit_rows.push_back(rec);
      }
      const OrderFit fit = fit_order(fit_rows);
      if (std::abs(fit.slope - crit5_slope) > 0.1) slopes_ok = false;
      slope_text += (p == 1 ? "p=1 slope " : ", p=2 slope ") +
                    format17(fit.slope);
      report.tables.emplace_back("derivative_p" + std::to_string(p),
                                 records_table(recs));
    }
    CriterionResult c;
    c.index = 7;
    c.name = "derivative-bound-suite-and-order";
    c.pass = failures == 0 && slopes_ok;
    c.detail = std::to_string(failures) + " of " + std::to_string(rows) +
               " rows exceed the bound; " + slope_text +
               " vs error slope " + format17(crit5_slope) + " (match +/- 0.1)";
    report.criteria.push_back(std::move(c));
  }

  // [8] Bernstein inequality on random polynomials
  {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    bool all_ok = true;
    int checked = 0;
    for (int degree = 1; degree <= 10; ++degree) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> coeffs(static_cast<size_t>(degree) + 1);
        for (auto& cf : coeffs) cf = Complex{unit(rng), unit(rng)};
        while (std::abs(coeffs.back()) < 0.2) {
          coeffs.back() = Complex{unit(rng), unit(rng)};
        }
        const Polynomial P{std::move(coeffs)};
        for (double r : {1.0, 2.0}) {
          if (!bernstein_inequality_check(P, r)) all_ok = false;
          ++checked;
        }
      }
    }
    CriterionResult c;
    c.index = 8;
    c.name = "bernstein-inequality";
    c.pass = all_ok;
    c.detail = std::to_string(checked) + " random-polynomial checks, slack 1e-9";
    report.criteria.push_back(std::move(c));
  }

  // [9] uncertified negative control
  {
    bool rejected = false;
    int index = -1;
    try {
      (void)load_function("{\"preset\": \"exp_uncertified\"}", false);
    } catch (const CertificateError& e) {
      rejected = true;
      index = e.violating_index;
    }
    const TaylorFunction expf =
        load_function("{\"preset\": \"exp_uncertified\"}", true);
    const DecayCheck check =
        validate_decay(expf.coeffs(), expf.decay_m(), expf.decay_a());
    bool row_reported = false;
    std::string row_text = "no row";
    try {
      OperatorConfig cfg;
      cfg.rule = BnRule::Sqrt;
      cfg.n = 8;
      const double bn = cfg.bn();
      const double err = sup_apply_error(expf, cfg, 1.0);
      const double bound = upper_constant(expf.decay_m(), expf.decay_a(), 1.0) *
                           (bn + 1.0) / (8.0 + 2.0);
      row_reported = true;
      row_text = "row n=8: error " + format17(err) + ", nominal bound " +
                 format17(bound) + (err <= bound ? " (holds)" : " (fails)");
    } catch (const Error&) {
      row_reported = false;
    }
    CriterionResult c;
    c.index = 9;
    c.name = "uncertified-negative-control";
    c.pass = rejected && index == 6 && !check.ok &&
             check.first_violation == 6 && row_reported;
    c.detail = std::string("rejected without override: ") +
               (rejected ? "yes" : "no") + ", violation index " +
               std::to_string(index) + "; with override: " + row_text;
    report.criteria.push_back(std::move(c));
  }

  return report;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
  if (!out) throw Error("failed writing output file: " + path);
}

}  // namespace szdc
