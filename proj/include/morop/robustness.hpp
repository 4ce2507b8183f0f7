#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morop/core.hpp"
#include "morop/pareto.hpp"

namespace morop {

struct Scenario {
  DepVector p;
  double probability = 0.0;
};

/// Discrete DEP scenarios p_1..p_N with probability masses h_j. The initial
/// environment p0 is the scenario of maximum probability.
struct ScenarioSet {
  std::vector<Scenario> scenarios;
  std::size_t initial_index = 0;

  std::size_t size() const { return scenarios.size(); }
  const Scenario& initial() const { return scenarios[initial_index]; }

  /// Checks sum(h) == 1 within 1e-9, h_j >= 0 and that initial_index attains
  /// the maximum probability. Throws Error("config-error").
  void validate(std::size_t expected_dims) const;
};

/// Per-objective extreme values over the nominal Pareto front at p0; the
/// normalization denominators of I_RS.
struct ObjectiveExtremes {
  std::vector<double> f_min;
  std::vector<double> f_max;

  double range(std::size_t i) const { return f_max[i] - f_min[i]; }
  bool degenerate() const;  // true if any objective has zero range
};

/// Extremes taken over the feasible non-dominated subset of the archive's
/// nominal evaluations. Throws Error("no-feasible-solution") if that subset
/// is empty.
ObjectiveExtremes extremes_from_archive(const ParetoArchive& archive);

/// All robustness measurements for one archive member.
struct RobustnessRecord {
  std::string id;
  double i_rs = 0.0;
  bool i_rs_valid = true;  // false when the I_RS stage was skipped
  int i_f = 1;
  std::vector<double> i_p;  // per scenario, 1/I_rank; NaN if eval failed there
  std::vector<int> i_rank;  // per scenario; 0 if eval failed there
  double i_rl = 0.0;
  std::vector<double> sigma_f, mu_f, f0;  // per objective (small variations)
  std::vector<double> delta_f_small, delta_f_large;  // per objective
  std::size_t failed_samples = 0;
};

struct SmallVariationStats {
  double i_rs = 0.0;
  std::vector<double> sigma;  // sample standard deviation (n-1 divisor)
  std::vector<double> mu;     // sample mean
  std::vector<double> bias;   // |mu - f0|
};

/// I_RS = sqrt( sum_i (w_i * (sigma_i + |mu_i - f0_i|) / (fmax_i - fmin_i))^2 ).
/// weights empty means all 1 (equal importance). Requires >= 2 samples and
/// strictly positive ranges; throws Error("zero-range-objective") otherwise.
SmallVariationStats i_rs(std::span<const Evaluation> samples,
                         const Evaluation& nominal,
                         const ObjectiveExtremes& extremes,
                         std::span<const double> weights = {});

/// Largest per-objective distance from the nominal values:
/// delta_i = max_s |f_i(s) - f_i0|. Serves both the small-variation samples
/// (delta f^S) and the scenario evaluations (delta f^L).
std::vector<double> max_deviation(std::span<const Evaluation> samples,
                                  const Evaluation& nominal);

/// Feasibility index: 1 iff x is feasible at its nominal DV values in every
/// scenario. A model failure in any scenario counts as infeasible (warning
/// on stderr).
int i_f(const ProblemDef& problem, const DesignVector& x,
        const ScenarioSet& scenarios);

/// Large-variation analysis of the whole archive: nominal DVs re-evaluated in
/// every scenario, individual rankings with infeasible solutions included,
/// I_P = 1/I_rank and I_RL = 1 - I_F * sum_j I_P(p_j) h_j.
struct LargeVariationResult {
  // indexed [solution]
  std::vector<int> i_f;
  std::vector<double> i_rl;
  std::vector<std::vector<double>> i_p;            // [solution][scenario]
  std::vector<std::vector<int>> i_rank;            // [solution][scenario]
  std::vector<std::vector<double>> delta_f_large;  // [solution][objective]
  // indexed [scenario][solution], for the repositioned-front report
  std::vector<std::vector<Evaluation>> scenario_evals;
};

LargeVariationResult large_variation_analysis(const ProblemDef& problem,
                                              const ParetoArchive& archive,
                                              const ScenarioSet& scenarios,
                                              unsigned threads = 1);

/// RF-Space coordinates (I_RS, I_RL) in archive order.
std::vector<std::pair<double, double>> rf_space(
    std::span<const RobustnessRecord> records);

/// Robust-Pareto subset P_R(P): indices of the 2-objective Pareto front over
/// the RF-Space (both indices minimized).
std::vector<std::size_t> robust_pareto_filter(
    std::span<const std::pair<double, double>> rf_points);

/// Discretization helper for a normally distributed DEP on `count` equally
/// spaced points spanning [lo, hi]. Pdf weights (normalized density at the
/// grid points) reproduce the published wind-speed table; Mass uses the
/// probability mass of the equal-width cell around each point.
enum class BinMethod { Pdf, Mass };

std::vector<double> bin_normal_probabilities(double mean, double sigma,
                                             double lo, double hi,
                                             std::size_t count,
                                             BinMethod method = BinMethod::Pdf);

/// Full ScenarioSet varying one DEP component over the binned grid, other
/// components held at `nominal`.
ScenarioSet bin_normal_scenarios(const DepVector& nominal,
                                 std::size_t dep_index, double mean,
                                 double sigma, double lo, double hi,
                                 std::size_t count,
                                 BinMethod method = BinMethod::Pdf);

}  // namespace morop
