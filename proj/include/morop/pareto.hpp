#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace morop::pareto {

/// A solution's image in objective space (minimization) plus feasibility and
/// a stable identifier.
struct ObjectivePoint {
  std::vector<double> f;
  bool feasible = true;
  std::size_t id = 0;
};

/// Strict Pareto dominance: a.f <= b.f componentwise with a.f < b.f in at
/// least one component. Feasibility flags are ignored here; callers decide
/// who participates. Throws Error("dimension-mismatch") on unequal m.
bool dominates(std::span<const double> a, std::span<const double> b);
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

/// Individual ranking: I_rank(s) = 1 + number of points dominating s. With
/// include_infeasible the dominator set is all points, otherwise feasible
/// points only; every point receives a rank either way. Ranks are returned
/// in input order.
std::vector<int> rank_individuals(std::span<const ObjectivePoint> points,
                                  bool include_infeasible = true);

/// Ids of the feasible points dominated by no feasible point, in input order.
std::vector<std::size_t> pareto_front(std::span<const ObjectivePoint> points);

}  // namespace morop::pareto
