#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "morop/core.hpp"
#include "morop/pareto.hpp"

namespace morop::nsga2 {

struct GAConfig {
  std::size_t population_size = 200;
  std::size_t generations = 250;
  double crossover_prob = 0.9;
  double crossover_eta = 15.0;
  double mutation_prob = -1.0;  // < 0 means 1/n, resolved at run time
  double mutation_eta = 20.0;
  std::uint64_t seed = 0;
  bool feasibility_first = true;

  /// population_size even and >= 4, probabilities in [0,1], eta > 0.
  void validate() const;
};

struct Individual {
  DesignVector x;
  Evaluation eval;
  double violation = 0.0;  // sum of positive g_k; huge for failed evals
  bool failed = false;

  bool feasible() const { return !failed && violation == 0.0; }
};

/// Deb's fast non-dominated sort over an arbitrary dominance predicate
/// dom(i, j) == "i dominates j". Fronts partition [0, count); each member of
/// front k+1 is dominated by someone in fronts <= k.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dom);

/// Convenience overload on objective points (plain Pareto dominance; the
/// feasible flag is not consulted).
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const pareto::ObjectivePoint> points);

/// Crowding distances aligned with the front's input order: per objective the
/// boundary points get +infinity, interior points accumulate neighbor gaps
/// normalized by the front's objective range (0 contribution if the range is
/// zero).
std::vector<double> crowding_distance(
    std::span<const pareto::ObjectivePoint> front);

using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const Individual>)>;

/// Runs NSGA-II at the problem's nominal DEP values and returns the rank-1
/// feasible individuals of the final population, deduplicated on DV vectors
/// (1e-9 per component) and sorted by the first objective. Fitness
/// evaluations fan out over `threads` workers; selection and variation stay
/// on one seeded generator, so the result is identical for any thread count
/// and deterministic for a fixed seed. Throws Error("no-feasible-solution")
/// if the final population contains no feasible individual.
ParetoArchive optimize(const ProblemDef& problem, const GAConfig& config,
                       const GenerationObserver& observer = {},
                       unsigned threads = 1);

/// Archive extraction alone (exposed for tests): feasible non-dominated
/// members of an evaluated population, deduplicated and sorted as above.
ParetoArchive extract_archive(std::span<const Individual> population);

}  // namespace morop::nsga2
