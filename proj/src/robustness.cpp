#include "morop/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "morop/parallel.hpp"
#include "morop/sampling.hpp"

namespace morop {

namespace {

double normal_pdf(double z) {
  static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

void ScenarioSet::validate(std::size_t expected_dims) const {
  if (scenarios.empty())
    throw Error("config-error", "scenario set is empty");
  if (initial_index >= scenarios.size())
    throw Error("config-error", "initial scenario index out of range");
  double total = 0.0;
  double h_max = 0.0;
  for (const auto& s : scenarios) {
    if (s.p.size() != expected_dims)
      throw Error("config-error", "scenario DEP vector has wrong length");
    if (s.probability < 0.0)
      throw Error("config-error", "scenario probability is negative");
    total += s.probability;
    h_max = std::max(h_max, s.probability);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error("config-error", "scenario probabilities do not sum to 1");
  if (scenarios[initial_index].probability < h_max - 1e-12)
    throw Error("config-error",
                "initial scenario does not have the maximum probability");
}

bool ObjectiveExtremes::degenerate() const {
  for (std::size_t i = 0; i < f_min.size(); ++i)
    if (!(f_max[i] - f_min[i] > 0.0)) return true;
  return false;
}

ObjectiveExtremes extremes_from_archive(const ParetoArchive& archive) {
  std::vector<pareto::ObjectivePoint> points;
  points.reserve(archive.size());
  for (std::size_t s = 0; s < archive.size(); ++s) {
    const Evaluation& e = archive.entries[s].nominal;
    if (!e.ok()) continue;
    points.push_back({e.f, is_feasible(e), s});
  }
  std::vector<std::size_t> front = pareto::pareto_front(points);
  if (front.empty())
    throw Error("no-feasible-solution",
                "archive has no feasible nominal evaluation");

  std::size_t m = archive.entries[front.front()].nominal.f.size();
  ObjectiveExtremes ex;
  ex.f_min.assign(m, std::numeric_limits<double>::infinity());
  ex.f_max.assign(m, -std::numeric_limits<double>::infinity());
  for (std::size_t s : front) {
    const auto& f = archive.entries[s].nominal.f;
    for (std::size_t i = 0; i < m; ++i) {
      ex.f_min[i] = std::min(ex.f_min[i], f[i]);
      ex.f_max[i] = std::max(ex.f_max[i], f[i]);
    }
  }
  return ex;
}

SmallVariationStats i_rs(std::span<const Evaluation> samples,
                         const Evaluation& nominal,
                         const ObjectiveExtremes& extremes,
                         std::span<const double> weights) {
  if (samples.size() < 2)
    throw Error("model-failure", "i_rs needs at least 2 samples");
  std::size_t m = nominal.f.size();
  if (!weights.empty() && weights.size() != m)
    throw Error("config-error", "i_rs weights size does not match m");

  SmallVariationStats st;
  st.sigma.assign(m, 0.0);
  st.mu.assign(m, 0.0);
  st.bias.assign(m, 0.0);

  for (const Evaluation& e : samples) {
    if (!e.ok()) throw Error("model-failure", "i_rs received a failed sample");
    for (std::size_t i = 0; i < m; ++i) st.mu[i] += e.f[i];
  }
  double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < m; ++i) st.mu[i] /= n;

  for (const Evaluation& e : samples)
    for (std::size_t i = 0; i < m; ++i) {
      double d = e.f[i] - st.mu[i];
      st.sigma[i] += d * d;
    }

  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    st.sigma[i] = std::sqrt(st.sigma[i] / (n - 1.0));
    st.bias[i] = std::abs(st.mu[i] - nominal.f[i]);
    double range = extremes.range(i);
    if (!(range > 0.0))
      throw Error("zero-range-objective",
                  "objective has zero range on the Pareto front");
    double w = weights.empty() ? 1.0 : weights[i];
    double term = w * (st.sigma[i] + st.bias[i]) / range;
    sum += term * term;
  }
  st.i_rs = std::sqrt(sum);
  return st;
}

std::vector<double> max_deviation(std::span<const Evaluation> samples,
                                  const Evaluation& nominal) {
  std::size_t m = nominal.f.size();
  std::vector<double> delta(m, 0.0);
  for (const Evaluation& e : samples) {
    if (!e.ok()) continue;
    for (std::size_t i = 0; i < m; ++i)
      delta[i] = std::max(delta[i], std::abs(e.f[i] - nominal.f[i]));
  }
  return delta;
}

int i_f(const ProblemDef& problem, const DesignVector& x,
        const ScenarioSet& scenarios) {
  for (const Scenario& s : scenarios.scenarios) {
    Evaluation e = evaluate(problem, x, s.p);
    if (!e.ok()) {
      std::fprintf(stderr,
                   "warning: model failure in a scenario; treating the "
                   "solution as infeasible there\n");
      return 0;
    }
    if (!is_feasible(e)) return 0;
  }
  return 1;
}

LargeVariationResult large_variation_analysis(const ProblemDef& problem,
                                              const ParetoArchive& archive,
                                              const ScenarioSet& scenarios,
                                              unsigned threads) {
  scenarios.validate(problem.r);
  if (archive.empty()) throw Error("empty-archive", "archive is empty");

  std::size_t S = archive.size();
  std::size_t N = scenarios.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  LargeVariationResult res;
  res.scenario_evals.assign(N, std::vector<Evaluation>(S));
  parallel_for(N * S, threads, [&](std::size_t k) {
    std::size_t j = k / S, s = k % S;
    res.scenario_evals[j][s] =
        evaluate(problem, archive.entries[s].x, scenarios.scenarios[j].p);
  });

  res.i_f.assign(S, 1);
  res.i_p.assign(S, std::vector<double>(N, nan));
  res.i_rank.assign(S, std::vector<int>(N, 0));
  bool any_failure = false;
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<pareto::ObjectivePoint> points;
    points.reserve(S);
    for (std::size_t s = 0; s < S; ++s) {
      const Evaluation& e = res.scenario_evals[j][s];
      if (!e.ok()) {
        any_failure = true;
        res.i_f[s] = 0;
        continue;
      }
      points.push_back({e.f, is_feasible(e), s});
      if (!is_feasible(e)) res.i_f[s] = 0;
    }
    std::vector<int> ranks = pareto::rank_individuals(points, true);
    for (std::size_t k = 0; k < points.size(); ++k) {
      res.i_rank[points[k].id][j] = ranks[k];
      res.i_p[points[k].id][j] = 1.0 / static_cast<double>(ranks[k]);
    }
  }
  if (any_failure)
    std::fprintf(stderr,
                 "warning: model failures in scenario evaluation; affected "
                 "solutions treated as infeasible\n");

  res.i_rl.assign(S, 1.0);
  for (std::size_t s = 0; s < S; ++s) {
    if (res.i_f[s] == 0) continue;  // I_RL = 1 exactly when I_F = 0
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j)
      acc += res.i_p[s][j] * scenarios.scenarios[j].probability;
    res.i_rl[s] = std::clamp(1.0 - acc, 0.0, 1.0);
  }

  res.delta_f_large.assign(S, {});
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<Evaluation> evals;
    evals.reserve(N);
    for (std::size_t j = 0; j < N; ++j) evals.push_back(res.scenario_evals[j][s]);
    res.delta_f_large[s] = max_deviation(evals, archive.entries[s].nominal);
  }
  return res;
}

std::vector<std::pair<double, double>> rf_space(
    std::span<const RobustnessRecord> records) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.emplace_back(r.i_rs, r.i_rl);
  return pts;
}

std::vector<std::size_t> robust_pareto_filter(
    std::span<const std::pair<double, double>> rf_points) {
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < rf_points.size(); ++s) {
    bool dominated = false;
    for (std::size_t t = 0; t < rf_points.size() && !dominated; ++t) {
      if (t == s) continue;
      dominated = rf_points[t].first <= rf_points[s].first &&
                  rf_points[t].second <= rf_points[s].second &&
                  (rf_points[t].first < rf_points[s].first ||
                   rf_points[t].second < rf_points[s].second);
    }
    if (!dominated) keep.push_back(s);
  }
  return keep;
}

std::vector<double> bin_normal_probabilities(double mean, double sigma,
                                             double lo, double hi,
                                             std::size_t count,
                                             BinMethod method) {
  if (count == 0 || !(sigma > 0.0) || !(hi >= lo))
    throw Error("config-error", "invalid bin-normal parameters");
  if (count == 1) return {1.0};

  double step = (hi - lo) / static_cast<double>(count - 1);
  std::vector<double> h(count, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    double v = lo + step * static_cast<double>(k);
    if (method == BinMethod::Pdf) {
      h[k] = normal_pdf((v - mean) / sigma);
    } else {
      double za = (v - 0.5 * step - mean) / sigma;
      double zb = (v + 0.5 * step - mean) / sigma;
      h[k] = normal_cdf(zb) - normal_cdf(za);
    }
    total += h[k];
  }
  for (double& v : h) v /= total;
  return h;
}

ScenarioSet bin_normal_scenarios(const DepVector& nominal,
                                 std::size_t dep_index, double mean,
                                 double sigma, double lo, double hi,
                                 std::size_t count, BinMethod method) {
  if (dep_index >= nominal.size())
    throw Error("config-error", "bin-normal DEP index out of range");
  std::vector<double> h = bin_normal_probabilities(mean, sigma, lo, hi, count,
                                                   method);
  ScenarioSet set;
  double step = count > 1 ? (hi - lo) / static_cast<double>(count - 1) : 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    Scenario s;
    s.p = nominal;
    s.p[dep_index] = lo + step * static_cast<double>(k);
    s.probability = h[k];
    set.scenarios.push_back(std::move(s));
    if (h[k] > h[set.initial_index]) set.initial_index = k;
  }
  return set;
}

}  // namespace morop
