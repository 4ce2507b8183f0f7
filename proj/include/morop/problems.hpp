#pragma once

#include <memory>

#include "morop/bemt.hpp"
#include "morop/core.hpp"
#include "morop/robustness.hpp"

namespace morop::problems {

/// Two-objective test function, one design variable and one environment
/// parameter:
///   f1 = x + p/2,  f2 = (x - p)^2,  g1 = 3 - f1  (f1 >= 3),  1 <= x <= 10.
Evaluation numerical_eg1(const DesignVector& x, const DepVector& p);

/// numerical_eg1 wired up with nominal p = 5, DV noise uniform +-0.1, no DEP
/// noise.
ProblemDef numerical_example_problem();

/// Three p scenarios {3, 5, 8} with h = {0.2, 0.5, 0.3}; p0 is the p = 5
/// scenario.
ScenarioSet numerical_example_scenarios();

/// The five alternative solutions A..E (x = 1..5) evaluated at p0.
ParetoArchive numerical_example_archive();

/// Horizontal-axis wind-turbine rotor sized by BEMT. Design variables
///   x = [root twist deg, tip twist deg, root chord m, rotor speed rpm],
/// environment parameters
///   p = [blade count, tip radius m, root radius m, air density, wind speed].
/// Objectives (minimized): f1 = -P in kW, f2 = axial force F_a in kN.
/// Constraints: 1 kW <= P <= 25 kW as g1 = 1 - P, g2 = P - 25.
ProblemDef wind_turbine_problem(std::shared_ptr<const bemt::PolarTable> polar,
                                const bemt::BemtOptions& options = {});

/// Wind-speed scenarios v = 6..14 m/s in 1 m/s steps, weighted by a Normal
/// (mean 10, sigma 2) discretized over the nine grid points; p0 is the
/// v = 10 scenario.
ScenarioSet wind_scenarios();

}  // namespace morop::problems
