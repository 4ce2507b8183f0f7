#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "morop/errors.hpp"
#include "morop/pareto.hpp"
#include "morop/rng.hpp"

using namespace morop;
using pareto::ObjectivePoint;

namespace {

std::vector<ObjectivePoint> random_points(Rng& rng, std::size_t count,
                                          std::size_t m,
                                          bool with_infeasible = false) {
  std::vector<ObjectivePoint> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts[i].id = i;
    pts[i].f.resize(m);
    for (std::size_t k = 0; k < m; ++k) pts[i].f[k] = rng.uniform(0.0, 10.0);
    pts[i].feasible = !with_infeasible || rng.uniform01() < 0.8;
  }
  return pts;
}

// Definition-level dominance check, spelled out independently of the library
// predicate so the two can disagree.
bool dominates_oracle(const std::vector<double>& a,
                      const std::vector<double>& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

}  // namespace

TEST_CASE("dominance on hand-picked points") {
  CHECK(pareto::dominates(std::vector<double>{3.5, 1.0},
                          std::vector<double>{5.5, 1.0}));
  CHECK(pareto::dominates(std::vector<double>{2.5, 4.0},
                          std::vector<double>{6.5, 4.0}));
  CHECK_FALSE(pareto::dominates(std::vector<double>{1.0, 2.0},
                                std::vector<double>{1.0, 2.0}));
  CHECK_FALSE(pareto::dominates(std::vector<double>{1.0, 5.0},
                                std::vector<double>{2.0, 4.0}));
  CHECK(pareto::dominates(std::vector<double>{1.0, 2.0, 3.0},
                          std::vector<double>{1.0, 2.0, 3.5}));
  CHECK_THROWS_AS(pareto::dominates(std::vector<double>{1.0},
                                    std::vector<double>{1.0, 2.0}),
                  Error);
}

TEST_CASE("dominance is irreflexive, antisymmetric and transitive") {
  Rng rng(101);
  auto pts = random_points(rng, 60, 3);
  for (const auto& a : pts) CHECK_FALSE(pareto::dominates(a, a));
  for (const auto& a : pts)
    for (const auto& b : pts) {
      CHECK(pareto::dominates(a, b) == dominates_oracle(a.f, b.f));
      if (pareto::dominates(a, b)) {
        CHECK_FALSE(pareto::dominates(b, a));
        for (const auto& c : pts)
          if (pareto::dominates(b, c)) CHECK(pareto::dominates(a, c));
      }
    }
}

TEST_CASE("individual ranks on the five-solution example") {
  // Objective images of x = 1..5. Under p = 3 the first point sits below the
  // feasibility line f1 >= 3 but still takes part in the ranking.
  auto image = [](double x, double p) {
    ObjectivePoint pt;
    pt.f = {x + p / 2.0, (x - p) * (x - p)};
    pt.feasible = pt.f[0] >= 3.0;
    return pt;
  };

  std::vector<ObjectivePoint> at3, at8;
  for (double x = 1.0; x <= 5.0; x += 1.0) {
    at3.push_back(image(x, 3.0));
    at8.push_back(image(x, 8.0));
  }
  at3[0].id = 0;

  auto ranks3 = pareto::rank_individuals(at3, /*include_infeasible=*/true);
  CHECK(ranks3 == std::vector<int>{1, 1, 1, 3, 5});

  // Excluding the infeasible first point only removes it as a dominator.
  // It dominates the last point alone, whose rank drops from 5 to 4; the
  // fourth point keeps both of its feasible dominators.
  auto ranks3f = pareto::rank_individuals(at3, /*include_infeasible=*/false);
  CHECK(ranks3f == std::vector<int>{1, 1, 1, 3, 4});

  auto ranks8 = pareto::rank_individuals(at8, true);
  CHECK(ranks8 == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("ranks match a direct dominator count on random instances") {
  Rng rng(2024);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 1 + rng.below(120);
    const std::size_t m = 2 + rng.below(2);
    auto pts = random_points(rng, n, m, /*with_infeasible=*/true);

    for (bool include : {true, false}) {
      auto ranks = pareto::rank_individuals(pts, include);
      REQUIRE(ranks.size() == n);
      for (std::size_t i = 0; i < n; ++i) {
        int dominators = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          if (!include && !pts[j].feasible) continue;
          if (dominates_oracle(pts[j].f, pts[i].f)) ++dominators;
        }
        CHECK(ranks[i] == 1 + dominators);
      }
    }
  }
}

TEST_CASE("rank is monotone under insertion") {
  Rng rng(7);
  auto pts = random_points(rng, 40, 2);
  auto before = pareto::rank_individuals(pts, true);
  pts.push_back({{-1.0, -1.0}, true, 40});  // dominates everything
  auto after = pareto::rank_individuals(pts, true);
  for (std::size_t i = 0; i < 40; ++i) CHECK(after[i] == before[i] + 1);
  CHECK(after[40] == 1);
}

TEST_CASE("pareto front keeps the feasible non-dominated points in order") {
  std::vector<ObjectivePoint> pts;
  pts.push_back({{3.5, 16.0}, true, 10});
  pts.push_back({{4.5, 9.0}, true, 11});
  pts.push_back({{5.5, 4.0}, true, 12});
  pts.push_back({{6.5, 1.0}, true, 13});
  pts.push_back({{7.5, 0.0}, true, 14});
  CHECK(pareto::pareto_front(pts) ==
        std::vector<std::size_t>{10, 11, 12, 13, 14});

  pts.clear();
  pts.push_back({{1.0, 1.0}, true, 0});
  pts.push_back({{2.0, 2.0}, true, 1});
  CHECK(pareto::pareto_front(pts) == std::vector<std::size_t>{0});

  pts.clear();
  pts.push_back({{0.0, 0.0}, false, 0});  // dominates all but is infeasible
  pts.push_back({{2.0, 1.0}, true, 1});
  pts.push_back({{1.0, 2.0}, true, 2});
  CHECK(pareto::pareto_front(pts) == std::vector<std::size_t>{1, 2});

  const std::vector<ObjectivePoint> none;
  CHECK(pareto::pareto_front(none).empty());
}

TEST_CASE("front members are exactly the rank-1 feasible points") {
  Rng rng(99);
  for (int rep = 0; rep < 10; ++rep) {
    auto pts = random_points(rng, 80, 2, true);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].id = i;
    auto front = pareto::pareto_front(pts);
    auto ranks = pareto::rank_individuals(pts, /*include_infeasible=*/false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool on_front =
          std::find(front.begin(), front.end(), i) != front.end();
      CHECK(on_front == (pts[i].feasible && ranks[i] == 1));
    }
  }
}
