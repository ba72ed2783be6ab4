#include "szdc/function_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace szdc {

namespace {

// A^p/(2p)!, in log space; the certificate envelope shape.
double decay_envelope(double A, int p) {
  return std::exp(p * std::log(A) - std::lgamma(2.0 * p + 1.0));
}

// Roundoff slack so exact-equality certificates (fitted M) validate.
constexpr double kDecaySlack = 1.0 + 1e-12;

double fit_decay_m(std::span<const Complex> coeffs, double A) {
  double m = 0.0;
  for (size_t p = 0; p < coeffs.size(); ++p) {
    const double mag = std::abs(coeffs[p]);
    if (mag == 0.0) continue;
    m = std::max(m, mag / decay_envelope(A, static_cast<int>(p)));
  }
  return m > 0.0 ? m : 1.0;
}

// M sum_{p>N} (A R)^p/(2p)!; converges superexponentially.
double certificate_tail(double M, double A, double R, int top_index) {
  const double q = A * R;
  double sum = 0.0;
  for (int p = top_index + 1; p <= top_index + 300; ++p) {
    const double term =
        std::exp(p * std::log(q) - std::lgamma(2.0 * p + 1.0));
    sum += term;
    if (term < 1e-320) break;
  }
  return M * sum;
}

void check_shape(const std::vector<Complex>& coeffs, double M, double A,
                 double R) {
  if (!(M > 0.0)) throw ConfigError("TaylorFunction: M must be positive");
  if (!(R > 1.0)) throw ConfigError("TaylorFunction: R must exceed 1");
  if (!(A > 1.0 / R) || !(A < 1.0)) {
    throw ConfigError("TaylorFunction: A must lie in (1/R, 1)");
  }
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError("TaylorFunction: non-finite coefficient");
    }
  }
}

std::vector<Complex> trim_trailing_zeros(std::vector<Complex> coeffs) {
  while (!coeffs.empty() && coeffs.back() == Complex{0.0, 0.0}) {
    coeffs.pop_back();
  }
  return coeffs;
}

}  // namespace

DecayCheck validate_decay(std::span<const Complex> coeffs, double M,
                          double A) {
  for (size_t p = 0; p < coeffs.size(); ++p) {
    const double envelope = M * decay_envelope(A, static_cast<int>(p));
    if (std::abs(coeffs[p]) > envelope * kDecaySlack) {
      return {false, static_cast<int>(p)};
    }
  }
  return {true, -1};
}

TaylorFunction TaylorFunction::make_certified(std::vector<Complex> coeffs,
                                              double M, double A, double R) {
  coeffs = trim_trailing_zeros(std::move(coeffs));
  check_shape(coeffs, M, A, R);
  const DecayCheck check = validate_decay(coeffs, M, A);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "decay certificate violated at index " << check.first_violation;
    throw CertificateError(msg.str(), check.first_violation);
  }
  TaylorFunction f;
  f.coeffs_ = std::move(coeffs);
  f.m_ = M;
  f.a_ = A;
  f.r_ = R;
  f.tail_bound_ = certificate_tail(M, A, R, f.top_index());
  f.certified_ = true;
  return f;
}

TaylorFunction TaylorFunction::make_uncertified(std::vector<Complex> coeffs,
                                                double M, double A, double R) {
  coeffs = trim_trailing_zeros(std::move(coeffs));
  check_shape(coeffs, M, A, R);
  TaylorFunction f;
  f.coeffs_ = std::move(coeffs);
  f.m_ = M;
  f.a_ = A;
  f.r_ = R;
  f.tail_bound_ = 0.0;
  f.certified_ = false;
  return f;
}

TaylorFunction TaylorFunction::monomial(int degree, double A, double R) {
  if (degree < 0) throw ConfigError("monomial: degree must be >= 0");
  std::vector<Complex> coeffs(static_cast<size_t>(degree) + 1,
                              Complex{0.0, 0.0});
  coeffs.back() = Complex{1.0, 0.0};
  return polynomial(std::move(coeffs), A, R);
}

TaylorFunction TaylorFunction::polynomial(std::vector<Complex> coeffs,
                                          double A, double R) {
  coeffs = trim_trailing_zeros(std::move(coeffs));
  const double m = fit_decay_m(coeffs, A);
  TaylorFunction f = make_certified(std::move(coeffs), m, A, R);
  f.tail_bound_ = 0.0;  // nothing dropped: the function is the polynomial
  return f;
}

TaylorFunction TaylorFunction::cosh_sqrt(double A, int truncate) {
  if (!(A > 0.0) || !(A < 1.0)) {
    throw ConfigError("cosh_sqrt: A must lie in (0, 1)");
  }
  const double R = 2.0 / A;
  std::vector<Complex> coeffs{Complex{1.0, 0.0}};
  double c = 1.0;
  double rpow = 1.0;
  for (int p = 1; p <= 64; ++p) {
    c *= A / ((2.0 * p - 1.0) * (2.0 * p));
    rpow *= R;
    if (truncate >= 0) {
      if (p > truncate) break;
    } else if (c * rpow < 1e-30 && p > 3) {
      break;
    }
    coeffs.emplace_back(c, 0.0);
  }
  return make_certified(std::move(coeffs), 1.0, A, R);
}

TaylorFunction TaylorFunction::exp_uncertified() {
  std::vector<Complex> coeffs;
  double c = 1.0;
  coeffs.emplace_back(c, 0.0);
  for (int p = 1; p <= 40; ++p) {
    c /= p;
    coeffs.emplace_back(c, 0.0);
  }
  TaylorFunction f = make_uncertified(std::move(coeffs), 1e6, 0.9, 4.0);
  // honest dropped-tail bound from the defining series at |z| = R = 4
  double term = std::exp(40.0 * std::log(4.0) - std::lgamma(41.0));
  double tail = 0.0;
  for (int p = 41; p <= 120; ++p) {
    term *= 4.0 / p;
    tail += term;
  }
  f.tail_bound_ = tail;
  return f;
}

Complex TaylorFunction::eval(Complex z) const {
  if (std::abs(z) > r_) {
    throw DomainError("eval: |z| exceeds the function's disk radius");
  }
  return eval_series(z);
}

Complex TaylorFunction::eval_series(Complex z) const {
  ComplexNeumaierSum acc;
  Complex zp{1.0, 0.0};
  for (size_t p = 0; p < coeffs_.size(); ++p) {
    acc.add(coeffs_[p] * zp);
    zp *= z;
  }
  return acc.value();
}

TaylorFunction TaylorFunction::derivative(int order) const {
  if (order < 1 || order > 4) {
    throw ConfigError("derivative: order must lie in [1, 4]");
  }
  std::vector<Complex> d(coeffs_);
  for (int o = 0; o < order; ++o) {
    if (d.empty()) break;
    for (size_t j = 1; j < d.size(); ++j) {
      d[j - 1] = d[j] * static_cast<double>(j);
    }
    d.pop_back();
  }
  d = trim_trailing_zeros(std::move(d));
  TaylorFunction f;
  f.coeffs_ = std::move(d);
  f.a_ = a_;
  f.r_ = r_;
  f.certified_ = certified_;
  if (certified_) {
    f.m_ = fit_decay_m(f.coeffs_, a_);
    f.tail_bound_ = certificate_tail(f.m_, a_, r_, f.top_index());
  } else {
    f.m_ = m_;
    f.tail_bound_ = tail_bound_;
  }
  return f;
}

namespace {

using nlohmann::json;

std::vector<Complex> parse_coeffs(const json& arr) {
  if (!arr.is_array()) throw ParseError("function spec: coeffs must be an array");
  std::vector<Complex> coeffs;
  coeffs.reserve(arr.size());
  for (const auto& item : arr) {
    if (item.is_number()) {
      coeffs.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() &&
               item[1].is_number()) {
      coeffs.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw ParseError("function spec: each coefficient must be a number or [re, im]");
    }
  }
  return coeffs;
}

TaylorFunction from_json(const json& doc, bool allow_uncertified) {
  if (!doc.is_object()) throw ParseError("function spec: expected an object");
  if (doc.contains("preset")) {
    const std::string preset = doc.at("preset").get<std::string>();
    if (preset == "monomial") {
      const int degree = doc.value("degree", 3);
      return TaylorFunction::monomial(degree, doc.value("A", 0.4),
                                      doc.value("R", 4.0));
    }
    if (preset == "polynomial") {
      std::vector<Complex> coeffs{{1.0, 0.0}, {0.5, 0.0}, {-0.25, 0.0}, {0.125, 0.0}};
      if (doc.contains("coeffs")) coeffs = parse_coeffs(doc.at("coeffs"));
      return TaylorFunction::polynomial(std::move(coeffs), doc.value("A", 0.4),
                                        doc.value("R", 4.0));
    }
    if (preset == "cosh_sqrt") {
      return TaylorFunction::cosh_sqrt(doc.value("A", 0.2),
                                       doc.value("truncate", -1));
    }
    if (preset == "exp_uncertified") {
      if (!allow_uncertified) {
        throw CertificateError(
            "exp_uncertified violates the decay certificate at index 6; "
            "pass --allow-uncertified to load it anyway",
            6);
      }
      return TaylorFunction::exp_uncertified();
    }
    throw ParseError("function spec: unknown preset '" + preset + "'");
  }
  if (!doc.contains("coeffs") || !doc.contains("M") || !doc.contains("A") ||
      !doc.contains("R")) {
    throw ParseError("function spec: expected preset or {coeffs, M, A, R}");
  }
  std::vector<Complex> coeffs = parse_coeffs(doc.at("coeffs"));
  const double M = doc.at("M").get<double>();
  const double A = doc.at("A").get<double>();
  const double R = doc.at("R").get<double>();
  const bool certified = doc.value("certified", true);
  if (certified && !allow_uncertified) {
    return TaylorFunction::make_certified(std::move(coeffs), M, A, R);
  }
  if (certified) {
    // with the override, a failing certificate degrades to uncertified
    const DecayCheck check = validate_decay(coeffs, M, A);
    if (check.ok) return TaylorFunction::make_certified(std::move(coeffs), M, A, R);
  } else if (!allow_uncertified) {
    throw CertificateError("function spec declares certified=false", -1);
  }
  return TaylorFunction::make_uncertified(std::move(coeffs), M, A, R);
}

}  // namespace

TaylorFunction load_function(const std::string& text, bool allow_uncertified) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("function spec: ") + e.what());
  }
  return from_json(doc, allow_uncertified);
}

TaylorFunction load_function_file(const std::string& path,
                                  bool allow_uncertified) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open function spec file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_function(buf.str(), allow_uncertified);
}

std::string serialize_function(const TaylorFunction& f) {
  json doc;
  json coeffs = json::array();
  for (const Complex& c : f.coeffs()) {
    coeffs.push_back(json::array({c.real(), c.imag()}));
  }
  doc["coeffs"] = std::move(coeffs);
  doc["M"] = f.decay_m();
  doc["A"] = f.decay_a();
  doc["R"] = f.radius();
  doc["certified"] = f.certified();
  doc["tail_bound"] = f.tail_bound();
  return doc.dump(2);
}

}  // namespace szdc
