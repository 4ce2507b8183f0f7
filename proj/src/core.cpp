#include "morop/core.hpp"

#include <cmath>

namespace morop {

NoiseSpec NoiseSpec::uniform(double half_width) {
  if (half_width < 0.0)
    throw Error("config-error", "uniform noise half-width must be >= 0");
  NoiseSpec s;
  s.kind = Kind::Uniform;
  s.param = half_width;
  return s;
}

NoiseSpec NoiseSpec::normal(double sigma) {
  if (sigma < 0.0)
    throw Error("config-error", "normal noise sigma must be >= 0");
  NoiseSpec s;
  s.kind = Kind::Normal;
  s.param = sigma;
  return s;
}

void ProblemDef::validate() const {
  if (n == 0 || m == 0)
    throw Error("config-error", "problem needs at least one DV and objective");
  if (dv_bounds.size() != n)
    throw Error("config-error", "dv_bounds size does not match n");
  if (dep_nominal.size() != r)
    throw Error("config-error", "dep_nominal size does not match r");
  if (!dv_noise.empty() && dv_noise.size() != n)
    throw Error("config-error", "dv_noise size does not match n");
  if (!dep_noise.empty() && dep_noise.size() != r)
    throw Error("config-error", "dep_noise size does not match r");
  for (const auto& [lo, hi] : dv_bounds)
    if (!(lo <= hi)) throw Error("config-error", "DV bound lower > upper");
  if (!evaluator) throw Error("config-error", "problem has no evaluator");
}

Evaluation evaluate(const ProblemDef& problem, const DesignVector& x,
                    const DepVector& p) {
  if (x.size() != problem.n)
    throw Error("dimension-mismatch", "design vector has wrong length");
  if (p.size() != problem.r)
    throw Error("dimension-mismatch", "environment vector has wrong length");
  Evaluation e = problem.evaluator(x, p);
  if (e.status == EvalStatus::Ok) {
    if (e.f.size() != problem.m || e.g.size() != problem.q)
      throw Error("dimension-mismatch", "evaluator returned wrong sizes");
    for (double v : e.f)
      if (!std::isfinite(v)) e.status = EvalStatus::ModelFailure;
    for (double v : e.g)
      if (!std::isfinite(v)) e.status = EvalStatus::ModelFailure;
  }
  return e;
}

bool is_feasible(const Evaluation& e) {
  if (!e.ok()) throw Error("model-failure", "feasibility of a failed evaluation");
  for (double gk : e.g)
    if (gk > 0.0) return false;
  return true;
}

double constraint_violation(const Evaluation& e) {
  double total = 0.0;
  for (double gk : e.g)
    if (gk > 0.0) total += gk;
  return total;
}

}  // namespace morop
