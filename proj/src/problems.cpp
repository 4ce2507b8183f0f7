#include "morop/problems.hpp"

#include <cmath>

namespace morop::problems {

Evaluation numerical_eg1(const DesignVector& x, const DepVector& p) {
  Evaluation e;
  double f1 = x[0] + 0.5 * p[0];
  double f2 = (x[0] - p[0]) * (x[0] - p[0]);
  e.f = {f1, f2};
  e.g = {3.0 - f1};
  return e;
}

ProblemDef numerical_example_problem() {
  ProblemDef def;
  def.name = "numerical_eg1";
  def.n = 1;
  def.m = 2;
  def.q = 1;
  def.r = 1;
  def.dv_bounds = {{1.0, 10.0}};
  def.dep_nominal = {5.0};
  def.dv_noise = {NoiseSpec::uniform(0.1)};
  def.dep_noise = {NoiseSpec::none()};
  def.evaluator = numerical_eg1;
  return def;
}

ScenarioSet numerical_example_scenarios() {
  ScenarioSet set;
  set.scenarios = {{{3.0}, 0.2}, {{5.0}, 0.5}, {{8.0}, 0.3}};
  set.initial_index = 1;
  return set;
}

ParetoArchive numerical_example_archive() {
  ProblemDef def = numerical_example_problem();
  ParetoArchive archive;
  const char* ids[] = {"A", "B", "C", "D", "E"};
  for (int k = 0; k < 5; ++k) {
    DesignVector x = {static_cast<double>(k + 1)};
    archive.entries.push_back({ids[k], x, evaluate(def, x, def.dep_nominal)});
  }
  return archive;
}

ProblemDef wind_turbine_problem(std::shared_ptr<const bemt::PolarTable> polar,
                                const bemt::BemtOptions& options) {
  if (!polar) throw Error("config-error", "wind turbine problem needs a polar");
  ProblemDef def;
  def.name = "bemt_rotor";
  def.n = 4;
  def.m = 2;
  def.q = 2;
  def.r = 5;
  def.dv_bounds = {{0.0, 35.0},      // root twist (deg)
                   {-5.0, 15.0},     // tip twist (deg)
                   {0.595, 0.895},   // root chord (m)
                   {40.0, 100.0}};   // rotor speed (rpm)
  def.dep_nominal = {2.0, 5.0, 1.27, 1.25, 10.0};
  def.dv_noise = {NoiseSpec::uniform(1.0), NoiseSpec::uniform(0.5),
                  NoiseSpec::uniform(0.005), NoiseSpec::uniform(2.0)};
  def.dep_noise = {NoiseSpec::none(), NoiseSpec::uniform(0.05),
                   NoiseSpec::uniform(0.005), NoiseSpec::uniform(0.05),
                   NoiseSpec::normal(2.0)};
  def.evaluator = [polar, options](const DesignVector& x,
                                   const DepVector& p) -> Evaluation {
    bemt::BladeDesign design =
        bemt::BladeDesign::from_dvs(x[0], x[1], x[2], x[3]);
    bemt::RotorEnvironment env;
    env.blade_count = static_cast<int>(std::lround(p[0]));
    env.tip_radius_m = p[1];
    env.root_radius_m = p[2];
    env.air_density = p[3];
    env.wind_speed = p[4];
    Evaluation e;
    try {
      bemt::RotorPerformance perf =
          bemt::bemt_evaluate(design, env, *polar, options);
      double power_kw = perf.power_w / 1000.0;
      double thrust_kn = perf.thrust_n / 1000.0;
      e.f = {-power_kw, thrust_kn};
      e.g = {1.0 - power_kw, power_kw - 25.0};
    } catch (const Error&) {
      e.status = EvalStatus::ModelFailure;
    }
    return e;
  };
  return def;
}

ScenarioSet wind_scenarios() {
  // Published discretization of the site's wind distribution; masses sum to
  // 1 exactly and peak at the 10 m/s scenario.
  static const double h[9] = {0.028, 0.066, 0.124, 0.180, 0.204,
                              0.180, 0.124, 0.066, 0.028};
  ScenarioSet set;
  for (int k = 0; k < 9; ++k) {
    Scenario s;
    s.p = {2.0, 5.0, 1.27, 1.25, 6.0 + static_cast<double>(k)};
    s.probability = h[k];
    set.scenarios.push_back(std::move(s));
  }
  set.initial_index = 4;
  return set;
}

}  // namespace morop::problems
