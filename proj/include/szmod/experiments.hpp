#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "szmod/report.hpp"
#include "szmod/sequences.hpp"
#include "szmod/smoothness.hpp"
#include "szmod/szoperator.hpp"
#include "szmod/test_function.hpp"

namespace szmod {

enum class Study { converge, voronovskaja, direct_bound, alpha_inverse, figures, moment_audit };

const char* study_name(Study s);
Study study_from_name(const std::string& name);  // throws config_error

/// One curve family in a figures study: a sequence swept over n in [n_lo, n_hi].
struct CurveSpec {
  BnSequence sequence = BnSequence::classical();
  int n_lo = 1;
  int n_hi = 1;
};

struct ExperimentSpec {
  Study study = Study::converge;
  bool study_explicit = false;  // set when a config names the study
  TestFunction function = TestFunction::monomial(2);
  BnSequence sequence = BnSequence::classical();
  std::vector<int> n_ladder;       // strictly increasing
  WeightedSpace space;
  EvalConfig eval;
  std::string output_path;

  // Study-specific settings (defaults resolved per study when empty).
  double x_min = 0.0;              // figures interval start
  std::vector<double> x_nodes;     // pointwise nodes (voronovskaja, direct)
  std::vector<double> deltas;      // modulus ladder (alpha study)
  std::vector<CurveSpec> curves;   // figures families
  int h_samples = 64;
};

/// Flat key-value config, one `key = value` per line, '#' comments, repeated
/// `curve` keys allowed. Throws config_error on unknown keys or bad values.
ExperimentSpec parse_config(std::istream& in);
ExperimentSpec parse_config_file(const std::string& path);

/// Per-n window supremum of w_N(x) |S_n(f;x) - f(x)|, the x-grid doubled
/// until the supremum moves by < 1% (at most 3 doublings).
struct WindowSup {
  double value = 0.0;
  double x_at = 0.0;
};
WindowSup sup_weighted_error(const TestFunction& f, double b, const WeightedSpace& space,
                             const EvalConfig& eval);

ExperimentReport run_converge(const ExperimentSpec& spec);
ExperimentReport run_voronovskaja(const ExperimentSpec& spec);
ExperimentReport run_direct_bound(const ExperimentSpec& spec);
ExperimentReport run_alpha_inverse(const ExperimentSpec& spec);
ExperimentReport run_figures(const ExperimentSpec& spec);
ExperimentReport run_moment_audit(const ExperimentSpec& spec);

/// Dispatch on spec.study.
ExperimentReport run_study(const ExperimentSpec& spec);

}  // namespace szmod
