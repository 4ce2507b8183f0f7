#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace morop::bemt {

/// Tabulated airfoil polar, alpha in degrees and strictly increasing.
/// Lookups interpolate linearly; queries outside the tabulated range throw
/// Error("polar-out-of-range").
class PolarTable {
 public:
  struct Coeffs {
    double cl = 0.0;
    double cd = 0.0;
  };

  PolarTable(std::vector<double> alpha_deg, std::vector<double> cl,
             std::vector<double> cd);

  Coeffs at(double alpha_deg) const;
  double cl(double alpha_deg) const { return at(alpha_deg).cl; }
  double cd(double alpha_deg) const { return at(alpha_deg).cd; }

  double alpha_min() const { return alpha_.front(); }
  double alpha_max() const { return alpha_.back(); }
  std::size_t size() const { return alpha_.size(); }

 private:
  std::vector<double> alpha_, cl_, cd_;
};

/// Reads a polar from CSV with header `alpha_deg,cl,cd`; '#' starts a
/// comment line. Validates monotone alpha, cd >= 0 and that the table covers
/// at least [-10, +25] degrees.
PolarTable load_polar(const std::string& path);

/// Blade described by its root/tip twist, root chord and rotor speed. Tip
/// chord is tied to the root chord by the fixed total: c_r + c_t = 1.095 m.
/// Twist and chord vary linearly along the span.
struct BladeDesign {
  double root_twist_deg = 0.0;
  double tip_twist_deg = 0.0;
  double root_chord_m = 0.0;
  double tip_chord_m = 0.0;
  double rotor_speed_rpm = 0.0;

  static constexpr double kTotalChordM = 1.095;

  static BladeDesign from_dvs(double root_twist_deg, double tip_twist_deg,
                              double root_chord_m, double rotor_speed_rpm) {
    BladeDesign d;
    d.root_twist_deg = root_twist_deg;
    d.tip_twist_deg = tip_twist_deg;
    d.root_chord_m = root_chord_m;
    d.tip_chord_m = kTotalChordM - root_chord_m;
    d.rotor_speed_rpm = rotor_speed_rpm;
    return d;
  }
};

struct RotorEnvironment {
  int blade_count = 2;
  double tip_radius_m = 5.0;
  double root_radius_m = 1.27;
  double air_density = 1.25;   // kg/m^3
  double wind_speed = 10.0;    // m/s

  void validate() const;  // r_t > r_r > 0, rho > 0, b >= 1
};

struct RotorPerformance {
  double power_w = 0.0;
  double thrust_n = 0.0;
};

struct BemtOptions {
  int n_elements = 40;
  double relaxation = 0.25;
  double tolerance = 1e-8;
  int max_iterations = 500;
  /// Actuator-disc mode: induction pinned at fixed_axial_induction, no tip
  /// loss, no blade forces; loads follow from the momentum balance alone.
  bool momentum_only = false;
  double fixed_axial_induction = 1.0 / 3.0;
};

/// Blade Element Momentum solution over the annulus [r_r, r_t]: per element
/// the axial/tangential induction factors are solved by damped fixed-point
/// iteration with the Prandtl tip-loss factor and Buhl's empirical thrust
/// relation above a = 0.4; elemental torque and axial force are integrated
/// into shaft power and thrust. Throws Error("bemt-no-convergence") or
/// Error("polar-out-of-range").
RotorPerformance bemt_evaluate(const BladeDesign& design,
                               const RotorEnvironment& env,
                               const PolarTable& polar,
                               const BemtOptions& options = {});

/// C_P = P / (0.5 rho pi (r_t^2 - r_r^2) v^3); the reference area is the
/// modeled annulus.
double power_coefficient(const RotorPerformance& perf,
                         const RotorEnvironment& env);

}  // namespace morop::bemt
