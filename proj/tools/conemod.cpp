#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "conemod/errors.hpp"
#include "conemod/report.hpp"
#include "conemod/verify.hpp"

namespace {

using conemod::Error;
using conemod::ErrorKind;
using nlohmann::json;

void emit(const json& report, const std::string& out_path) {
  std::string text = conemod::dump_report(report);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) conemod::fail(ErrorKind::Validation, "cannot open output file " + out_path);
  out << text;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) conemod::fail(ErrorKind::Validation, "cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    conemod::fail(ErrorKind::Validation, std::string("config parse error: ") + e.what());
  }
}

struct CommonOpts {
  std::string preset;
  std::string config_path;
  std::string out_path;
  double tol = conemod::kRateTolerance;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conemod: critical rates, Fredholm index bookkeeping, P^2 sheaf cohomology, and "
               "virtual dimensions of conically singular SU(3)-instanton moduli"};
  app.require_subcommand(1);

  CommonOpts rates_opts;
  std::vector<std::string> window_args;
  auto* rates_cmd = app.add_subcommand("rates", "critical rates of a cone operator in a window");
  rates_cmd->add_option("--preset", rates_opts.preset, "operator preset name");
  rates_cmd->add_option("--config", rates_opts.config_path, "operator JSON document");
  rates_cmd->add_option("--window", window_args, "open window bounds: lo hi")->expected(2);
  rates_cmd->add_option("--out", rates_opts.out_path, "write the report to a file");
  rates_cmd->add_option("--tol", rates_opts.tol, "rate comparison tolerance");

  CommonOpts coh_opts;
  std::string expr_text;
  auto* coh_cmd = app.add_subcommand("cohomology", "cohomology of a bundle expression on P^2");
  coh_cmd->add_option("--expr", expr_text, "bundle expression, e.g. \"End(T)(-1)\"")->required();
  coh_cmd->add_option("--out", coh_opts.out_path, "write the report to a file");

  CommonOpts dim_opts;
  int points = 1;
  std::string mu_text = "-1/2";
  bool ker_hypothesis = false;
  auto* dim_cmd = app.add_subcommand("dim", "virtual dimension of a moduli configuration");
  dim_cmd->add_option("--preset", dim_opts.preset, "tangent-cone preset applied to every point");
  dim_cmd->add_option("--config", dim_opts.config_path, "moduli configuration JSON document");
  dim_cmd->add_option("--points", points, "number of singular points (preset mode)");
  dim_cmd->add_option("--mu", mu_text, "conical rate mu (preset mode)");
  dim_cmd->add_flag("--assume-trivial-kernel", ker_hypothesis,
                    "assert ker(L)_{-5/2} = 0 and report obstruction dimensions");
  dim_cmd->add_option("--out", dim_opts.out_path, "write the report to a file");
  dim_cmd->add_option("--tol", dim_opts.tol, "rate comparison tolerance");

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification suites");
  unsigned seed = 20250810;
  verify_cmd->add_option("--seed", seed, "seed for the randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rates_cmd->parsed()) {
      conemod::ConeOperatorSpec op;
      if (!rates_opts.preset.empty() && !rates_opts.config_path.empty())
        conemod::fail(ErrorKind::Validation, "--preset and --config are mutually exclusive");
      if (!rates_opts.preset.empty())
        op = conemod::preset_operator(rates_opts.preset);
      else if (!rates_opts.config_path.empty())
        op = conemod::operator_from_json(load_json(rates_opts.config_path));
      else
        conemod::fail(ErrorKind::Validation, "rates needs --preset or --config");
      if (window_args.size() != 2)
        conemod::fail(ErrorKind::Validation, "rates needs --window lo hi");
      conemod::Window window = conemod::make_window(conemod::parse_rate(window_args[0]),
                                                    conemod::parse_rate(window_args[1]));
      auto set = conemod::critical_rates(op, window, rates_opts.tol);
      emit(conemod::rates_report(op, set), rates_opts.out_path);
      return 0;
    }

    if (coh_cmd->parsed()) {
      emit(conemod::cohomology_report(expr_text), coh_opts.out_path);
      return 0;
    }

    if (dim_cmd->parsed()) {
      conemod::ModuliConfig config;
      if (!dim_opts.preset.empty() && !dim_opts.config_path.empty())
        conemod::fail(ErrorKind::Validation, "--preset and --config are mutually exclusive");
      if (!dim_opts.config_path.empty()) {
        config = conemod::moduli_config_from_json(load_json(dim_opts.config_path));
      } else if (!dim_opts.preset.empty()) {
        if (points < 1) conemod::fail(ErrorKind::Validation, "--points must be >= 1");
        config.group = conemod::Group::pun(2);
        for (int i = 0; i < points; ++i) {
          conemod::TangentConeSpec point;
          point.preset = dim_opts.preset;
          point.stab_dim = 8;
          point.mu = conemod::parse_rate(mu_text);
          config.points.push_back(point);
        }
      } else {
        conemod::fail(ErrorKind::Validation, "dim needs --preset or --config");
      }
      auto report = conemod::dimension_report(config, ker_hypothesis, dim_opts.tol);
      emit(conemod::dimension_report_json(config, report), dim_opts.out_path);
      return 0;
    }

    if (verify_cmd->parsed()) {
      auto results = conemod::run_verification(seed);
      std::string first_failure;
      for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << " - " << r.detail;
        if (r.measured > 0) std::cout << " (measured " << r.measured << ")";
        std::cout << "\n";
        if (!r.passed && first_failure.empty()) first_failure = r.name;
      }
      if (!first_failure.empty()) {
        std::cerr << "verification failed: " << first_failure << "\n";
        return 1;
      }
      std::cout << "all " << results.size() << " suites passed\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
