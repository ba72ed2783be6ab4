#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "szdc/analysis.hpp"

namespace szdc {

// n grid: geometric (xstep, default x2) or linear (+step).
struct NRange {
  int start = 8;
  int stop = 512;
  bool geometric = true;
  int step = 2;
};

std::vector<int> expand_n_range(const NRange& range);  // ConfigError on misuse

// Which function a run acts on: a preset name (cosh_sqrt, monomial,
// polynomial, exp_uncertified) or a path to a function-spec document.
// A and M, when set, override the preset's parameters.
struct FunctionChoice {
  std::string name_or_path = "cosh_sqrt";
  std::optional<double> A;
  std::optional<double> M;
};

TaylorFunction resolve_function(const FunctionChoice& choice,
                                bool allow_uncertified);

struct ExperimentConfig {
  FunctionChoice function;
  BnRule rule = BnRule::Sqrt;
  double explicit_bn = 0.0;
  NRange ns;
  double r = 1.0;
  double r1 = 2.0;
  int derivative_order = 1;
  double series_tol = 1e-12;
  std::uint64_t seed = 0;
  bool allow_uncertified = false;
  int n0 = 4;  // first index from which bound suites assert
  // moments subcommand only
  int moment_n = 10;
  int p_max = 6;
};

struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "in-window"
};

// Cells are preformatted (17 significant digits) so reports are
// byte-reproducible.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
};

struct CommandReport {
  std::string command;
  std::vector<std::pair<std::string, CsvTable>> tables;  // name -> table
  std::vector<Assertion> assertions;
  std::vector<std::pair<std::string, std::string>> info;  // free-form values

  bool all_pass() const;
  std::string summary_json() const;  // deterministic (sorted keys)
};

std::string format17(double v);

// Sweep engines behind the CLI subcommands. Each returns the pinned CSV
// schema n, b_n, error, bound, ratio, slope_running plus its assertions.
CommandReport run_moments(const ExperimentConfig& cfg);
CommandReport run_converge(const ExperimentConfig& cfg);
CommandReport run_voronovskaja(const ExperimentConfig& cfg);
CommandReport run_derivative(const ExperimentConfig& cfg);

// The full acceptance battery (everything except the CLI determinism
// check, which needs to run the binary itself). Prints nothing; the
// caller renders criteria lines / files.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic: measured values, no timings
};

struct VerifyAllReport {
  std::vector<CriterionResult> criteria;
  std::vector<std::pair<std::string, CsvTable>> tables;
  bool all_pass() const;
  std::string summary_json() const;
};

VerifyAllReport run_verify_all(std::uint64_t seed);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace szdc
