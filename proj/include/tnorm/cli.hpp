#pragma once

// Command-line surface. Exit codes: 0 success, 1 property failure, 2 usage
// or input error. Diagnostics go to the error stream.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "tnorm/harness.hpp"
#include "tnorm/parse.hpp"
#include "tnorm/tensor.hpp"

namespace tnorm {

namespace detail {

inline FieldsConfig load_fields(const std::string& path) {
  if (path.empty()) return FieldsConfig{};
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read descriptor file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fields_config(buf.str());
}

inline void report_parse_error(std::ostream& err, const ParseError& e, const std::string& text) {
  err << "error: " << e.what() << "\n  " << text << "\n  " << std::string(std::min(e.position(), text.size()), ' ')
      << "^\n";
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Tensor-product norms over towers of rational function fields", "tnorm"};
  app.require_subcommand(1);

  std::string fields_path, expr;
  auto* norm = app.add_subcommand("norm", "Print the norm and the audited reduced representation");
  norm->add_option("descriptor", fields_path, "Field configuration file")->required();
  norm->add_option("expr", expr, "Tensor expression, e.g. \"t (x) 1 + 1 (x) u\"")->required();

  auto* reduce = app.add_subcommand("reduce", "Print the reduced representation");
  reduce->add_option("expr", expr, "Tensor expression")->required();
  reduce->add_option("--fields", fields_path, "Field configuration file (default: built-in)");

  auto* decompose = app.add_subcommand("decompose", "Print the pure decomposition");
  decompose->add_option("expr", expr, "Tensor expression")->required();
  decompose->add_option("--fields", fields_path, "Field configuration file (default: built-in)");

  ScenarioConfig cfg;
  std::string suite, base = "closure", k_vars = "t:-1", l_vars = "u:-1";
  unsigned jobs = 1;
  bool json = false, timing = false;
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", suite, "Suite name")->required();
  check->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  check->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  check->add_option("--p", cfg.p, "Characteristic")->capture_default_str();
  check->add_option("--level-bound", cfg.level_bound, "Largest level coefficients are sampled from")->capture_default_str();
  check->add_option("--base", base, "closure | prime")->capture_default_str();
  check->add_option("--constant-level", cfg.constant_level, "Constant field level for a prime base")->capture_default_str();
  check->add_option("--k", k_vars, "K variables, name:exponent list")->capture_default_str();
  check->add_option("--l", l_vars, "L variables, name:exponent list")->capture_default_str();
  check->add_option("--max-terms", cfg.max_terms, "Tensor terms per element")->capture_default_str();
  check->add_option("--max-degree", cfg.max_degree, "Polynomial degree bound")->capture_default_str();
  check->add_option("--from-trial", cfg.first_trial, "Index of the first trial")->capture_default_str();
  check->add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)")->capture_default_str();
  check->add_flag("--json", json, "Structured report");
  check->add_flag("--timing", timing, "Include elapsed time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      if (base != "closure" && base != "prime") throw InvalidConfig("--base must be closure or prime");
      cfg.closed_base = base == "closure";
      cfg.k_vars = parse_variables(k_vars);
      cfg.l_vars = parse_variables(l_vars);
      if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
      const SuiteReport report = run_suite(suite, cfg, jobs);
      if (json) {
        out << report.to_json(timing).dump(2) << "\n";
      } else {
        out << report.to_text(timing);
      }
      return report.passed() ? 0 : 1;
    }

    const Setting setting = Setting::build(detail::load_fields(fields_path));
    TensorElem z = TensorElem(setting.K, setting.L, {});
    try {
      z = parse_tensor(setting, expr);
    } catch (const ParseError& e) {
      detail::report_parse_error(err, e, expr);
      return 2;
    }
    if (*norm) {
      const ReducedRep rep = orthogonalize_left(z);
      out << rep.norm.to_string() << "\n" << format_reduced(rep);
    } else if (*reduce) {
      out << format_reduced(orthogonalize_left(z));
    } else {
      const PureDecomposition d = pure_decompose(z);
      out << "alpha: " << d.alpha.to_string() << "\nbeta: " << d.beta.to_string()
          << "\npure: " << format_tensor(d.pure_part) << "\ntail: " << format_tensor(d.tail) << "\n";
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tnorm
