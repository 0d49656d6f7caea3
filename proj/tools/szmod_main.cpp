// Command-line front door: pointwise evaluation, the coefficient table, and
// the experiment studies. Exit codes: 0 success, 1 evaluation error, 2 config
// error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "szmod/errors.hpp"
#include "szmod/experiments.hpp"
#include "szmod/moments.hpp"
#include "szmod/report.hpp"
#include "szmod/sequences.hpp"
#include "szmod/szoperator.hpp"
#include "szmod/test_function.hpp"

namespace {

std::string resolve_output_path(std::string path) {
  // SZMOD_OUT_DIR redirects relative outputs; absolute paths are untouched.
  const char* dir = std::getenv("SZMOD_OUT_DIR");
  if (dir != nullptr && !std::filesystem::path(path).is_absolute()) {
    return (std::filesystem::path(dir) / path).string();
  }
  return path;
}

struct StudyOptions {
  std::string config_path;
  std::string out_path;
};

int run_study_command(szmod::Study study, const StudyOptions& opts) {
  szmod::ExperimentSpec spec;
  if (!opts.config_path.empty()) {
    spec = szmod::parse_config_file(opts.config_path);
    if (spec.study_explicit && spec.study != study) {
      throw szmod::config_error("config study does not match subcommand");
    }
  }
  spec.study = study;
  if (!opts.out_path.empty()) spec.output_path = opts.out_path;
  if (spec.output_path.empty()) {
    throw szmod::config_error("no output path: pass --out or set 'out' in the config");
  }
  spec.output_path = resolve_output_path(spec.output_path);

  const szmod::ExperimentReport report = szmod::run_study(spec);
  szmod::write_report_file(report, spec.output_path);

  std::cout << szmod::study_name(study) << ": wrote " << report.rows.size() << " rows to "
            << spec.output_path << "\n";
  for (const auto& [key, value] : report.metadata) {
    std::cout << "  " << key << " = " << value << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modified Szasz-Mirakjan operators: evaluation, moments, experiments"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate S_n(f; x) once");
  std::string fn_spec = "monomial:2";
  std::string seq_spec = "classical";
  int n_index = 1;
  double x_point = 0.0;
  double tol = 1e-12;
  std::int64_t term_cap = 1'000'000;
  std::optional<std::int64_t> fixed_k;
  eval_cmd->add_option("--fn", fn_spec, "function spec: monomial:<i> | exp | sin | absshift:<c>")
      ->required();
  eval_cmd->add_option("--seq", seq_spec,
                       "sequence spec: classical | power:<m> | geometric:<r> | psum:<p> | "
                       "table:<v1,v2,...>")
      ->required();
  eval_cmd->add_option("--n", n_index, "sequence index n >= 1")->required();
  eval_cmd->add_option("--x", x_point, "evaluation point x >= 0")->required();
  eval_cmd->add_option("--tol", tol, "tail tolerance (tolerance-driven truncation)");
  eval_cmd->add_option("--term-cap", term_cap, "hard cap on summed terms");
  std::int64_t fixed_k_value = -1;
  auto* fixed_k_opt =
      eval_cmd->add_option("--fixed-k", fixed_k_value, "truncate at exactly k (overrides --tol)");

  // moments
  auto* moments_cmd = app.add_subcommand("moments", "coefficient table a_{r,j}");
  int r_max = 64;
  bool dump_table = false;
  moments_cmd->add_option("--rmax", r_max, "table order (default 64)");
  moments_cmd->add_flag("--dump-table", dump_table, "print the full table as CSV");

  // studies
  const std::pair<const char*, szmod::Study> studies[] = {
      {"converge", szmod::Study::converge},   {"voronovskaja", szmod::Study::voronovskaja},
      {"direct", szmod::Study::direct_bound}, {"alpha", szmod::Study::alpha_inverse},
      {"figures", szmod::Study::figures},     {"audit", szmod::Study::moment_audit},
  };
  StudyOptions study_opts;
  for (const auto& [name, study] : studies) {
    auto* cmd = app.add_subcommand(name, std::string("run the ") + name + " study");
    auto* cfg = cmd->add_option("--config", study_opts.config_path, "experiment config file");
    if (study != szmod::Study::moment_audit) cfg->required();
    cmd->add_option("--out", study_opts.out_path, "report path (.csv or .json)");
    cmd->callback([study, &study_opts] {
      const int rc = run_study_command(study, study_opts);
      if (rc != 0) throw CLI::RuntimeError(rc);
    });
  }

  try {
    app.parse(argc, argv);

    if (eval_cmd->parsed()) {
      szmod::EvalConfig cfg;
      cfg.tol = tol;
      cfg.term_cap = term_cap;
      if (fixed_k_opt->count() > 0) cfg.fixed_k = fixed_k_value;
      const auto f = szmod::parse_function(fn_spec);
      const auto seq = szmod::parse_sequence(seq_spec);
      const double value = szmod::apply(f, seq, n_index, x_point, cfg);
      std::cout << szmod::format_double(value) << "\n";
    } else if (moments_cmd->parsed()) {
      const szmod::MomentTable table(r_max);
      if (dump_table) {
        table.write_csv(std::cout);
      } else {
        bool identities_ok = true;
        for (int N = 2; N <= table.r_max() - 2; ++N) {
          identities_ok = identities_ok && table.coefficient_identity(N);
        }
        std::cout << "r_max = " << table.r_max() << "\n"
                  << "cancellation identity (2 <= N <= " << table.r_max() - 2
                  << "): " << (identities_ok ? "ok" : "FAILED") << "\n"
                  << "a_{r+1,r} = r(r+1)/2: "
                  << "ok for r <= " << table.r_max() - 1 << "\n";
      }
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const szmod::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
