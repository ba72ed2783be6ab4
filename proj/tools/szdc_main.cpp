#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "szdc/experiments.hpp"

namespace {

struct CommonOptions {
  std::string function = "cosh_sqrt";
  std::optional<double> A;
  std::optional<double> M;
  std::string bn = "sqrt";
  int n_start = 8;
  int n_stop = 512;
  std::string growth = "geometric";
  int step = 2;
  double r = 1.0;
  double r1 = 2.0;
  int p = 1;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  bool allow_uncertified = false;
  int n0 = 4;
  std::string out;
};

void add_sweep_options(CLI::App* sub, CommonOptions& opt) {
  sub->add_option("--function", opt.function,
                  "preset (cosh_sqrt|monomial|polynomial|exp_uncertified) or "
                  "function-spec file")
      ->capture_default_str();
  sub->add_option("--A", opt.A, "override the decay base A");
  sub->add_option("--M", opt.M, "override the certificate constant M");
  sub->add_option("--bn", opt.bn,
                  "b_n rule: sqrt|pow23|log|const-violating or a number")
      ->capture_default_str();
  sub->add_option("--n-start", opt.n_start, "first n of the sweep")
      ->capture_default_str();
  sub->add_option("--n-stop", opt.n_stop, "last n of the sweep")
      ->capture_default_str();
  sub->add_option("--growth", opt.growth, "n grid growth: geometric|linear")
      ->capture_default_str();
  sub->add_option("--step", opt.step, "grid factor (geometric) or increment")
      ->capture_default_str();
  sub->add_option("--r", opt.r, "disk radius for sup norms")
      ->capture_default_str();
  sub->add_option("--tol", opt.tol, "series/oracle tolerance")
      ->capture_default_str();
  sub->add_option("--seed", opt.seed, "seed for randomized suites")
      ->capture_default_str();
  sub->add_option("--n0", opt.n0, "first index from which bounds are asserted")
      ->capture_default_str();
  sub->add_flag("--allow-uncertified", opt.allow_uncertified,
                "permit functions whose decay certificate fails");
}

szdc::ExperimentConfig to_config(const CommonOptions& opt) {
  szdc::ExperimentConfig cfg;
  cfg.function.name_or_path = opt.function;
  cfg.function.A = opt.A;
  cfg.function.M = opt.M;
  try {
    cfg.rule = szdc::parse_bn_rule(opt.bn);
  } catch (const szdc::ParseError&) {
    try {
      cfg.explicit_bn = std::stod(opt.bn);
    } catch (const std::exception&) {
      throw szdc::ConfigError("unrecognized --bn value '" + opt.bn + "'");
    }
    cfg.rule = szdc::BnRule::Explicit;
  }
  cfg.ns.start = opt.n_start;
  cfg.ns.stop = opt.n_stop;
  if (opt.growth == "geometric") {
    cfg.ns.geometric = true;
  } else if (opt.growth == "linear") {
    cfg.ns.geometric = false;
  } else {
    throw szdc::ConfigError("--growth must be geometric or linear");
  }
  cfg.ns.step = opt.step;
  cfg.r = opt.r;
  cfg.r1 = opt.r1;
  cfg.derivative_order = opt.p;
  cfg.series_tol = opt.tol;
  cfg.seed = opt.seed;
  cfg.allow_uncertified = opt.allow_uncertified;
  cfg.n0 = opt.n0;
  return cfg;
}

int emit_report(const szdc::CommandReport& report, const std::string& out_path) {
  namespace fs = std::filesystem;
  fs::path csv_path = out_path;
  if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());
  if (report.tables.size() == 1) {
    szdc::write_text_file(csv_path.string(), report.tables[0].second.to_csv());
  } else {
    for (const auto& [name, table] : report.tables) {
      fs::path p = csv_path;
      p.replace_filename(csv_path.stem().string() + "_" + name +
                         csv_path.extension().string());
      szdc::write_text_file(p.string(), table.to_csv());
    }
  }
  fs::path json_path = csv_path;
  json_path.replace_extension(".json");
  szdc::write_text_file(json_path.string(), report.summary_json());

  for (const auto& a : report.assertions) {
    std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << " (value "
              << szdc::format17(a.value) << " " << a.relation << " "
              << szdc::format17(a.threshold) << ")\n";
  }
  for (const auto& [key, value] : report.info) {
    std::cout << key << " = " << value << "\n";
  }
  std::cout << "wrote " << csv_path.string() << " and " << json_path.string()
            << "\n";
  return report.all_pass() ? 0 : 1;
}

int run_verify_all_cmd(std::uint64_t seed, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const szdc::VerifyAllReport report = szdc::run_verify_all(seed);
  fs::create_directories(out_dir);
  for (const auto& [name, table] : report.tables) {
    szdc::write_text_file((fs::path(out_dir) / (name + ".csv")).string(),
                          table.to_csv());
  }
  szdc::write_text_file((fs::path(out_dir) / "summary.json").string(),
                        report.summary_json());
  for (const auto& c : report.criteria) {
    std::cout << "[" << c.index << "] " << (c.pass ? "PASS " : "FAIL ")
              << c.name << ": " << c.detail << "\n";
  }
  std::cout << "wrote " << report.tables.size() + 1 << " files under "
            << out_dir << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the complex "
               "Szasz-Durrmeyer-Chlodowsky operator"};
  app.set_config("--config", "", "read options from a config file");
  app.require_subcommand(1);

  CommonOptions opt;
  int moment_n = 10;
  int p_max = 6;

  CLI::App* moments = app.add_subcommand(
      "moments", "moment table, oracle deltas and bound margins");
  moments->add_option("--n", moment_n, "operator index n")->capture_default_str();
  moments->add_option("--bn", opt.bn, "b_n rule or value")->capture_default_str();
  moments->add_option("--pmax", p_max, "highest moment order")->capture_default_str();
  moments->add_option("--r", opt.r, "disk radius")->capture_default_str();
  moments->add_option("--out", opt.out, "CSV output path");

  CLI::App* converge =
      app.add_subcommand("converge", "upper-bound sweep and order fit");
  add_sweep_options(converge, opt);
  converge->add_option("--out", opt.out, "CSV output path");

  CLI::App* voronovskaja = app.add_subcommand(
      "voronovskaja", "residual sweep against the asymptotic term");
  add_sweep_options(voronovskaja, opt);
  voronovskaja->add_option("--out", opt.out, "CSV output path");

  CLI::App* derivative = app.add_subcommand(
      "derivative", "simultaneous-approximation sweep via Cauchy integrals");
  add_sweep_options(derivative, opt);
  derivative->add_option("--r1", opt.r1, "contour radius (r < r1 < R)")
      ->capture_default_str();
  derivative->add_option("--p", opt.p, "derivative order")->capture_default_str();
  derivative->add_option("--out", opt.out, "CSV output path");

  CLI::App* verify =
      app.add_subcommand("verify-all", "run the full verification battery");
  verify->add_option("--seed", opt.seed, "seed for randomized suites")
      ->capture_default_str();
  verify->add_option("--out", opt.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (moments->parsed()) {
      szdc::ExperimentConfig cfg = to_config(opt);
      cfg.moment_n = moment_n;
      cfg.p_max = p_max;
      return emit_report(szdc::run_moments(cfg),
                         opt.out.empty() ? "moments.csv" : opt.out);
    }
    if (converge->parsed()) {
      return emit_report(szdc::run_converge(to_config(opt)),
                         opt.out.empty() ? "converge.csv" : opt.out);
    }
    if (voronovskaja->parsed()) {
      return emit_report(szdc::run_voronovskaja(to_config(opt)),
                         opt.out.empty() ? "voronovskaja.csv" : opt.out);
    }
    if (derivative->parsed()) {
      return emit_report(szdc::run_derivative(to_config(opt)),
                         opt.out.empty() ? "derivative.csv" : opt.out);
    }
    if (verify->parsed()) {
      return run_verify_all_cmd(opt.seed, opt.out.empty() ? "verify" : opt.out);
    }
  } catch (const szdc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
