#include "morop/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "morop/parallel.hpp"
#include "morop/rng.hpp"

namespace morop::nsga2 {

namespace {

constexpr double kFailedViolation = 1e30;
constexpr double kDedupTol = 1e-9;

}  // namespace

void GAConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0)
    throw Error("config-error", "population_size must be even and >= 4");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw Error("config-error", "crossover_prob must be in [0, 1]");
  if (mutation_prob > 1.0)
    throw Error("config-error", "mutation_prob must be <= 1");
  if (!(crossover_eta > 0.0) || !(mutation_eta > 0.0))
    throw Error("config-error", "distribution indices must be > 0");
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dom) {
  std::vector<std::vector<std::size_t>> dominated(count);
  std::vector<std::size_t> n_dominators(count, 0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      if (dom(i, j)) {
        dominated[i].push_back(j);
        ++n_dominators[j];
      }
    }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < count; ++i)
    if (n_dominators[i] == 0) current.push_back(i);
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated[i])
        if (--n_dominators[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const pareto::ObjectivePoint> points) {
  return fast_nondominated_sort(points.size(),
                                [&](std::size_t i, std::size_t j) {
                                  return pareto::dominates(points[i],
                                                           points[j]);
                                });
}

std::vector<double> crowding_distance(
    std::span<const pareto::ObjectivePoint> front) {
  const std::size_t k = front.size();
  std::vector<double> dist(k, 0.0);
  if (k == 0) return dist;
  const double inf = std::numeric_limits<double>::infinity();
  if (k <= 2) return std::vector<double>(k, inf);

  const std::size_t m = front[0].f.size();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return front[a].f[i] < front[b].f[i];
                     });
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    double range = front[order.back()].f[i] - front[order.front()].f[i];
    if (!(range > 0.0)) continue;
    for (std::size_t j = 1; j + 1 < k; ++j) {
      if (dist[order[j]] == inf) continue;
      dist[order[j]] +=
          (front[order[j + 1]].f[i] - front[order[j - 1]].f[i]) / range;
    }
  }
  return dist;
}

namespace {

class Solver {
 public:
  Solver(const ProblemDef& problem, const GAConfig& config, unsigned threads)
      : problem_(problem),
        config_(config),
        threads_(threads),
        rng_(config.seed),
        mutation_prob_(config.mutation_prob < 0.0
                           ? 1.0 / static_cast<double>(problem.n)
                           : config.mutation_prob) {}

  ParetoArchive run(const GenerationObserver& observer) {
    init_population();
    classify(population_);
    if (observer) observer(0, population_);
    for (std::size_t gen = 1; gen <= config_.generations; ++gen) {
      std::vector<Individual> offspring = make_offspring();
      environmental_selection(std::move(offspring));
      if (observer) observer(gen, population_);
    }
    return extract_archive(population_);
  }

 private:
  void evaluate_range(std::vector<Individual>& pop) {
    parallel_for(pop.size(), threads_, [&](std::size_t i) {
      Individual& ind = pop[i];
      ind.eval = evaluate(problem_, ind.x, problem_.dep_nominal);
      if (!ind.eval.ok()) {
        ind.failed = true;
        ind.violation = kFailedViolation;
      } else {
        ind.violation = constraint_violation(ind.eval);
      }
    });
  }

  void init_population() {
    population_.resize(config_.population_size);
    for (Individual& ind : population_) {
      ind.x.resize(problem_.n);
      for (std::size_t l = 0; l < problem_.n; ++l)
        ind.x[l] =
            rng_.uniform(problem_.dv_bounds[l].first,
                         problem_.dv_bounds[l].second);
    }
    evaluate_range(population_);
  }

  // i dominates j under the constrained rule: feasible beats infeasible,
  // lower violation beats higher, Pareto dominance otherwise.
  bool constrained_dominates(const Individual& a, const Individual& b) const {
    if (config_.feasibility_first) {
      bool fa = a.feasible(), fb = b.feasible();
      if (fa != fb) return fa;
      if (!fa) return a.violation < b.violation;
    } else {
      if (a.failed != b.failed) return !a.failed;
      if (a.failed) return false;
    }
    return pareto::dominates(std::span<const double>(a.eval.f),
                             std::span<const double>(b.eval.f));
  }

  // Fronts + crowding for a population; fills rank_ and crowd_ aligned with
  // `pop`, returns the fronts.
  std::vector<std::vector<std::size_t>> classify_into(
      const std::vector<Individual>& pop, std::vector<std::size_t>& rank,
      std::vector<double>& crowd) const {
    auto fronts = fast_nondominated_sort(
        pop.size(), [&](std::size_t i, std::size_t j) {
          return constrained_dominates(pop[i], pop[j]);
        });
    rank.assign(pop.size(), 0);
    crowd.assign(pop.size(), 0.0);
    for (std::size_t fr = 0; fr < fronts.size(); ++fr) {
      std::vector<double> dist = front_crowding(pop, fronts[fr]);
      for (std::size_t k = 0; k < fronts[fr].size(); ++k) {
        rank[fronts[fr][k]] = fr;
        crowd[fronts[fr][k]] = dist[k];
      }
    }
    return fronts;
  }

  void classify(const std::vector<Individual>& pop) {
    classify_into(pop, rank_, crowd_);
  }

  std::vector<double> front_crowding(
      const std::vector<Individual>& pop,
      const std::vector<std::size_t>& front) const {
    for (std::size_t i : front)
      if (pop[i].failed) return std::vector<double>(front.size(), 0.0);
    std::vector<pareto::ObjectivePoint> points;
    points.reserve(front.size());
    for (std::size_t i : front) points.push_back({pop[i].eval.f, true, i});
    return crowding_distance(points);
  }

  std::size_t tournament() {
    std::size_t i = rng_.below(population_.size());
    std::size_t j = rng_.below(population_.size());
    if (i == j) return i;
    if (config_.feasibility_first) {
      bool fi = population_[i].feasible(), fj = population_[j].feasible();
      if (fi != fj) return fi ? i : j;
      if (!fi)
        return population_[i].violation <= population_[j].violation ? i : j;
    }
    if (rank_[i] != rank_[j]) return rank_[i] < rank_[j] ? i : j;
    if (crowd_[i] != crowd_[j]) return crowd_[i] > crowd_[j] ? i : j;
    return i;
  }

  void sbx(DesignVector& c1, DesignVector& c2) {
    if (rng_.uniform01() > config_.crossover_prob) return;
    const double eta = config_.crossover_eta;
    for (std::size_t l = 0; l < problem_.n; ++l) {
      if (rng_.uniform01() > 0.5) continue;
      double y1 = std::min(c1[l], c2[l]);
      double y2 = std::max(c1[l], c2[l]);
      if (y2 - y1 < 1e-14) continue;
      const auto [yl, yu] = problem_.dv_bounds[l];
      double rand = rng_.uniform01();

      auto spread = [&](double beta) {
        double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
        if (rand <= 1.0 / alpha)
          return std::pow(rand * alpha, 1.0 / (eta + 1.0));
        return std::pow(1.0 / (2.0 - rand * alpha), 1.0 / (eta + 1.0));
      };

      double betaq = spread(1.0 + 2.0 * (y1 - yl) / (y2 - y1));
      double a = 0.5 * ((y1 + y2) - betaq * (y2 - y1));
      betaq = spread(1.0 + 2.0 * (yu - y2) / (y2 - y1));
      double b = 0.5 * ((y1 + y2) + betaq * (y2 - y1));
      a = std::clamp(a, yl, yu);
      b = std::clamp(b, yl, yu);
      if (rng_.uniform01() <= 0.5) std::swap(a, b);
      c1[l] = a;
      c2[l] = b;
    }
  }

  void mutate(DesignVector& x) {
    const double eta = config_.mutation_eta;
    for (std::size_t l = 0; l < problem_.n; ++l) {
      if (rng_.uniform01() > mutation_prob_) continue;
      const auto [yl, yu] = problem_.dv_bounds[l];
      if (!(yu > yl)) continue;
      double y = x[l];
      double rnd = rng_.uniform01();
      double mut_pow = 1.0 / (eta + 1.0);
      double deltaq;
      if (rnd <= 0.5) {
        double xy = 1.0 - (y - yl) / (yu - yl);
        double val = 2.0 * rnd + (1.0 - 2.0 * rnd) * std::pow(xy, eta + 1.0);
        deltaq = std::pow(val, mut_pow) - 1.0;
      } else {
        double xy = 1.0 - (yu - y) / (yu - yl);
        double val =
            2.0 * (1.0 - rnd) + 2.0 * (rnd - 0.5) * std::pow(xy, eta + 1.0);
        deltaq = 1.0 - std::pow(val, mut_pow);
      }
      x[l] = std::clamp(y + deltaq * (yu - yl), yl, yu);
    }
  }

  std::vector<Individual> make_offspring() {
    std::vector<Individual> offspring;
    offspring.reserve(config_.population_size);
    while (offspring.size() < config_.population_size) {
      DesignVector c1 = population_[tournament()].x;
      DesignVector c2 = population_[tournament()].x;
      sbx(c1, c2);
      mutate(c1);
      mutate(c2);
      offspring.push_back({std::move(c1), {}, 0.0, false});
      if (offspring.size() < config_.population_size)
        offspring.push_back({std::move(c2), {}, 0.0, false});
    }
    evaluate_range(offspring);
    return offspring;
  }

  void environmental_selection(std::vector<Individual> offspring) {
    std::vector<Individual> combined = std::move(population_);
    combined.insert(combined.end(),
                    std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));

    std::vector<std::size_t> comb_rank;
    std::vector<double> comb_crowd;
    auto fronts = classify_into(combined, comb_rank, comb_crowd);

    population_.clear();
    rank_.clear();
    crowd_.clear();
    const std::size_t target = config_.population_size;
    for (const auto& front : fronts) {
      if (population_.size() == target) break;
      std::vector<std::size_t> members = front;
      if (population_.size() + members.size() > target) {
        std::stable_sort(members.begin(), members.end(),
                         [&](std::size_t a, std::size_t b) {
                           return comb_crowd[a] > comb_crowd[b];
                         });
        members.resize(target - population_.size());
      }
      for (std::size_t i : members) {
        population_.push_back(std::move(combined[i]));
        rank_.push_back(comb_rank[i]);
        crowd_.push_back(comb_crowd[i]);
      }
    }
  }

  const ProblemDef& problem_;
  const GAConfig& config_;
  unsigned threads_;
  Rng rng_;
  double mutation_prob_;
  std::vector<Individual> population_;
  std::vector<std::size_t> rank_;
  std::vector<double> crowd_;
};

}  // namespace

ParetoArchive extract_archive(std::span<const Individual> population) {
  std::vector<const Individual*> feasible;
  for (const Individual& ind : population)
    if (ind.feasible()) feasible.push_back(&ind);
  if (feasible.empty())
    throw Error("no-feasible-solution",
                "final population has no feasible individual");

  std::vector<pareto::ObjectivePoint> points;
  points.reserve(feasible.size());
  for (std::size_t i = 0; i < feasible.size(); ++i)
    points.push_back({feasible[i]->eval.f, true, i});
  auto fronts = fast_nondominated_sort(points);

  std::vector<const Individual*> best;
  for (std::size_t i : fronts.front()) best.push_back(feasible[i]);
  std::sort(best.begin(), best.end(),
            [](const Individual* a, const Individual* b) {
              if (a->eval.f != b->eval.f) return a->eval.f < b->eval.f;
              return a->x < b->x;
            });

  ParetoArchive archive;
  for (const Individual* ind : best) {
    bool duplicate = false;
    for (const ArchiveEntry& kept : archive.entries) {
      bool close = true;
      for (std::size_t l = 0; l < ind->x.size() && close; ++l)
        close = std::abs(ind->x[l] - kept.x[l]) <= kDedupTol;
      if (close) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) archive.entries.push_back({"", ind->x, ind->eval});
  }
  for (std::size_t i = 0; i < archive.size(); ++i)
    archive.entries[i].id = "S" + std::to_string(i + 1);
  return archive;
}

ParetoArchive optimize(const ProblemDef& problem, const GAConfig& config,
                       const GenerationObserver& observer, unsigned threads) {
  problem.validate();
  config.validate();
  Solver solver(problem, config, threads);
  return solver.run(observer);
}

}  // namespace morop::nsga2
