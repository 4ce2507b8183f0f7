#include "morop/pareto.hpp"

#include "morop/errors.hpp"

namespace morop::pareto {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error("dimension-mismatch", "objective vectors of unequal length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return dominates(std::span<const double>(a.f), std::span<const double>(b.f));
}

std::vector<int> rank_individuals(std::span<const ObjectivePoint> points,
                                  bool include_infeasible) {
  std::vector<int> ranks(points.size(), 1);
  for (std::size_t s = 0; s < points.size(); ++s) {
    for (std::size_t t = 0; t < points.size(); ++t) {
      if (t == s) continue;
      if (!include_infeasible && !points[t].feasible) continue;
      if (dominates(points[t], points[s])) ++ranks[s];
    }
  }
  return ranks;
}

std::vector<std::size_t> pareto_front(std::span<const ObjectivePoint> points) {
  std::vector<std::size_t> front;
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (!points[s].feasible) continue;
    bool dominated = false;
    for (std::size_t t = 0; t < points.size() && !dominated; ++t) {
      if (t == s || !points[t].feasible) continue;
      dominated = dominates(points[t], points[s]);
    }
    if (!dominated) front.push_back(points[s].id);
  }
  return front;
}

}  // namespace morop::pareto
