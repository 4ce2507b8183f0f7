#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "morop/errors.hpp"

namespace morop {

/// Design variables x (controllable by the designer), length n.
using DesignVector = std::vector<double>;

/// Design environment parameters p (uncontrollable), length r.
using DepVector = std::vector<double>;

enum class EvalStatus { Ok, ModelFailure };

/// Result of one model evaluation. Objectives f are in minimization sense;
/// a design is feasible iff every g_k <= 0. On ModelFailure the numeric
/// fields are not meaningful.
struct Evaluation {
  std::vector<double> f;
  std::vector<double> g;
  EvalStatus status = EvalStatus::Ok;

  bool ok() const { return status == EvalStatus::Ok; }
};

/// Additive noise model for one parameter.
struct NoiseSpec {
  enum class Kind { None, Uniform, Normal };
  Kind kind = Kind::None;
  double param = 0.0;  // half-width w for Uniform, sigma for Normal

  static NoiseSpec none() { return {}; }
  static NoiseSpec uniform(double half_width);
  static NoiseSpec normal(double sigma);
};

using Evaluator =
    std::function<Evaluation(const DesignVector&, const DepVector&)>;

/// The optimization problem: counts, DV box bounds, nominal DEP values,
/// per-parameter noise specs and the evaluator mapping (x, p) -> (f, g).
/// Evaluators must be pure: same (x, p) always yields the identical result,
/// and concurrent calls are safe.
struct ProblemDef {
  std::string name;
  std::size_t n = 0;  // design variables
  std::size_t m = 0;  // objectives
  std::size_t q = 0;  // constraints
  std::size_t r = 0;  // environment parameters
  std::vector<std::pair<double, double>> dv_bounds;  // n (lower, upper) pairs
  DepVector dep_nominal;                             // r values
  std::vector<NoiseSpec> dv_noise;                   // n entries
  std::vector<NoiseSpec> dep_noise;                  // r entries
  Evaluator evaluator;

  /// Throws Error("config-error") if sizes/bounds are inconsistent.
  void validate() const;
};

/// Evaluates x under environment p, checking dimensions against the problem.
/// Any non-finite evaluator output is reported as ModelFailure status, never
/// silently treated as infeasible; the caller decides how to handle it.
Evaluation evaluate(const ProblemDef& problem, const DesignVector& x,
                    const DepVector& p);

/// True iff all constraints hold (g_k <= 0, boundary included). Requires an
/// Ok evaluation.
bool is_feasible(const Evaluation& e);

/// Sum of positive constraint violations, 0 for feasible points.
double constraint_violation(const Evaluation& e);

/// One alternative solution: stable label, design vector and its evaluation
/// at the initial environment p0.
struct ArchiveEntry {
  std::string id;
  DesignVector x;
  Evaluation nominal;
};

/// Alternative-solution set P0 produced by the optimizer (or supplied by the
/// user) and consumed by the robustness stages.
struct ParetoArchive {
  std::vector<ArchiveEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

}  // namespace morop
