#include <doctest.h>

#include <cmath>

#include "szdc/experiments.hpp"

using szdc::ExperimentConfig;

namespace {

ExperimentConfig quick_converge() {
  ExperimentConfig cfg;
  cfg.function.name_or_path = "cosh_sqrt";
  cfg.ns = {8, 128, true, 2};  // five points: the least fit_order accepts
  cfg.r = 1.0;
  return cfg;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("n range expansion") {
  CHECK(szdc::expand_n_range({4, 512, true, 2}) ==
        std::vector<int>{4, 8, 16, 32, 64, 128, 256, 512});
  CHECK(szdc::expand_n_range({5, 20, false, 5}) == std::vector<int>{5, 10, 15, 20});
  CHECK_THROWS_AS(szdc::expand_n_range({0, 10, true, 2}), szdc::ConfigError);
  CHECK_THROWS_AS(szdc::expand_n_range({10, 5, true, 2}), szdc::ConfigError);
  CHECK_THROWS_AS(szdc::expand_n_range({2, 10, true, 1}), szdc::ConfigError);
}

TEST_CASE("function resolution with overrides") {
  szdc::FunctionChoice choice;
  choice.name_or_path = "cosh_sqrt";
  choice.A = 0.3;
  const szdc::TaylorFunction f = szdc::resolve_function(choice, false);
  CHECK(f.decay_a() == 0.3);
  CHECK(f.radius() == doctest::Approx(2.0 / 0.3));

  choice.name_or_path = "exp_uncertified";
  CHECK_THROWS_AS(szdc::resolve_function(choice, false), szdc::CertificateError);
  choice.A.reset();
  CHECK_FALSE(szdc::resolve_function(choice, true).certified());
}

TEST_CASE("moments engine: table shape and assertions") {
  ExperimentConfig cfg;
  cfg.moment_n = 10;
  cfg.p_max = 6;
  cfg.r = 1.0;
  const szdc::CommandReport report = szdc::run_moments(cfg);
  REQUIRE(report.tables.size() == 1);
  CHECK(report.tables[0].second.rows.size() == 7);
  CHECK(report.all_pass());
}

TEST_CASE("moments engine rejects bad configs") {
  ExperimentConfig cfg;
  cfg.moment_n = 10;
  cfg.rule = szdc::BnRule::ConstViolating;
  CHECK_THROWS_AS(szdc::run_moments(cfg), szdc::ConfigError);

  cfg.rule = szdc::BnRule::Sqrt;
  cfg.p_max = 100;
  CHECK_THROWS_AS(szdc::run_moments(cfg), szdc::ConfigError);
}

TEST_CASE("converge engine: bounds pass on a quick sweep") {
  const szdc::CommandReport report = szdc::run_converge(quick_converge());
  CHECK(report.all_pass());
  REQUIRE(report.tables.size() == 1);
  const auto& table = report.tables[0].second;
  CHECK(table.header ==
        std::vector<std::string>{"n", "b_n", "error", "bound", "ratio",
                                 "slope_running"});
  CHECK(table.rows.size() == 5);
  // first slope_running entry is not defined yet
  CHECK(table.rows[0][5] == "nan");
  CHECK(table.rows[4][5] != "nan");
}

TEST_CASE("converge engine rejects inadmissible scales and constants") {
  ExperimentConfig cfg = quick_converge();
  cfg.rule = szdc::BnRule::ConstViolating;
  CHECK_THROWS_AS(szdc::run_converge(cfg), szdc::ConfigError);

  cfg = quick_converge();
  cfg.function.name_or_path = "polynomial";  // constant function below
  cfg.function.A = 0.4;
  CHECK_NOTHROW(szdc::run_converge(cfg));

  // a constant function has identically zero error: degenerate order fit
  ExperimentConfig constant = quick_converge();
  constant.function.name_or_path = "spec_constant.json";
  szdc::write_text_file("spec_constant.json",
                        R"({"preset": "polynomial", "coeffs": [[1.0, 0.0]]})");
  CHECK_THROWS_AS(szdc::run_converge(constant), szdc::DegenerateDataError);

  // divergent constant: A r >= 1
  ExperimentConfig wide = quick_converge();
  wide.r = 5.0;
  CHECK_THROWS_AS(szdc::run_converge(wide), szdc::Error);
}

TEST_CASE("voronovskaja engine flags exact cancellation for degree one") {
  ExperimentConfig cfg = quick_converge();
  cfg.function.name_or_path = "spec_e1.json";
  szdc::write_text_file("spec_e1.json", R"({"preset": "monomial", "degree": 1})");
  const szdc::CommandReport report = szdc::run_voronovskaja(cfg);
  CHECK(report.all_pass());
  bool saw_flag = false;
  for (const auto& [key, value] : report.info) {
    if (key == "exact_cancellation") {
      saw_flag = true;
      CHECK(value == "true");
    }
  }
  CHECK(saw_flag);
}

TEST_CASE("derivative engine validates geometry") {
  ExperimentConfig cfg = quick_converge();
  cfg.r = 1.5;
  cfg.r1 = 1.2;
  CHECK_THROWS_AS(szdc::run_derivative(cfg), szdc::ConfigError);
  cfg.r1 = 2.0;
  cfg.derivative_order = 7;
  CHECK_THROWS_AS(szdc::run_derivative(cfg), szdc::ConfigError);
}

TEST_CASE("derivative engine: quick sweep passes bounds") {
  ExperimentConfig cfg;
  cfg.function.name_or_path = "cosh_sqrt";
  cfg.ns = {8, 128, true, 2};
  cfg.r = 1.5;
  cfg.r1 = 2.0;
  cfg.derivative_order = 1;
  const szdc::CommandReport report = szdc::run_derivative(cfg);
  CHECK(report.all_pass());
}

TEST_CASE("exact-order ratio window holds for every certified preset") {
  for (const std::string preset : {"cosh_sqrt", "monomial", "polynomial"}) {
    ExperimentConfig cfg;
    cfg.function.name_or_path = preset;
    cfg.ns = {4, 512, true, 2};
    cfg.r = 1.0;
    const szdc::CommandReport report = szdc::run_converge(cfg);
    CHECK(report.all_pass());
    double ratio_min = 0.0, ratio_max = 0.0;
    for (const auto& [key, value] : report.info) {
      if (key == "ratio_min") ratio_min = std::stod(value);
      if (key == "ratio_max") ratio_max = std::stod(value);
    }
    REQUIRE(ratio_min > 0.0);
    CHECK(ratio_max / ratio_min <= 20.0);
  }
}

TEST_CASE("engine reports are byte deterministic") {
  const szdc::CommandReport a = szdc::run_converge(quick_converge());
  const szdc::CommandReport b = szdc::run_converge(quick_converge());
  REQUIRE(a.tables.size() == b.tables.size());
  CHECK(a.tables[0].second.to_csv() == b.tables[0].second.to_csv());
  CHECK(a.summary_json() == b.summary_json());
  CHECK(a.summary_json().find("\"pass\": true") != std::string::npos);
}

TEST_CASE("format17 round trips doubles") {
  for (double v : {1.0 / 3.0, 2.718281828459045e-12, -7.25, 0.1}) {
    CHECK(std::stod(szdc::format17(v)) == v);
  }
}

}  // TEST_SUITE
