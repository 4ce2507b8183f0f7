#include "morop/bemt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "morop/errors.hpp"

namespace morop::bemt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rpm2rads(double rpm) { return rpm * 2.0 * kPi / 60.0; }

}  // namespace

PolarTable::PolarTable(std::vector<double> alpha_deg, std::vector<double> cl,
                       std::vector<double> cd)
    : alpha_(std::move(alpha_deg)), cl_(std::move(cl)), cd_(std::move(cd)) {
  if (alpha_.size() < 2 || alpha_.size() != cl_.size() ||
      alpha_.size() != cd_.size())
    throw Error("config-error", "polar table needs >= 2 aligned rows");
  for (std::size_t i = 1; i < alpha_.size(); ++i)
    if (!(alpha_[i] > alpha_[i - 1]))
      throw Error("config-error", "polar alpha must be strictly increasing");
  for (double v : cd_)
    if (v < 0.0) throw Error("config-error", "polar cd must be >= 0");
  if (alpha_.front() > -10.0 || alpha_.back() < 25.0)
    throw Error("config-error", "polar must cover at least [-10, 25] deg");
}

PolarTable::Coeffs PolarTable::at(double alpha_deg) const {
  if (!(alpha_deg >= alpha_.front() && alpha_deg <= alpha_.back()))
    throw Error("polar-out-of-range",
                "angle of attack outside the polar table");
  auto it = std::lower_bound(alpha_.begin(), alpha_.end(), alpha_deg);
  std::size_t hi = static_cast<std::size_t>(it - alpha_.begin());
  if (hi == 0) return {cl_[0], cd_[0]};
  std::size_t lo = hi - 1;
  if (hi == alpha_.size()) return {cl_.back(), cd_.back()};
  double t = (alpha_deg - alpha_[lo]) / (alpha_[hi] - alpha_[lo]);
  return {cl_[lo] + t * (cl_[hi] - cl_[lo]), cd_[lo] + t * (cd_[hi] - cd_[lo])};
}

PolarTable load_polar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config-error", "cannot open polar file: " + path);
  std::vector<double> alpha, cl, cd;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(),
               std::find_if(line.begin(), line.end(), not_space));
    line.erase(std::find_if(line.rbegin(), line.rend(), not_space).base(),
               line.end());
    if (line.empty()) continue;
    if (!header_seen) {
      std::string squashed;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) squashed += c;
      if (squashed != "alpha_deg,cl,cd")
        throw Error("config-error",
                    "polar header must be alpha_deg,cl,cd: " + path);
      header_seen = true;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, l, d;
    if (!(row >> a >> l >> d))
      throw Error("config-error", "malformed polar row " +
                                      std::to_string(line_no) + " in " + path);
    alpha.push_back(a);
    cl.push_back(l);
    cd.push_back(d);
  }
  if (!header_seen)
    throw Error("config-error", "polar file has no header: " + path);
  return PolarTable(std::move(alpha), std::move(cl), std::move(cd));
}

void RotorEnvironment::validate() const {
  if (!(tip_radius_m > root_radius_m && root_radius_m > 0.0))
    throw Error("config-error", "rotor radii must satisfy r_t > r_r > 0");
  if (!(air_density > 0.0))
    throw Error("config-error", "air density must be > 0");
  if (blade_count < 1)
    throw Error("config-error", "blade count must be >= 1");
  if (wind_speed < 0.0)
    throw Error("config-error", "wind speed must be >= 0");
}

RotorPerformance bemt_evaluate(const BladeDesign& design,
                               const RotorEnvironment& env,
                               const PolarTable& polar,
                               const BemtOptions& options) {
  env.validate();
  if (options.n_elements < 1)
    throw Error("config-error", "n_elements must be >= 1");
  if (env.wind_speed == 0.0) return {0.0, 0.0};

  const double v = env.wind_speed;
  const double rho = env.air_density;
  const double omega = rpm2rads(design.rotor_speed_rpm);
  const double b = static_cast<double>(env.blade_count);
  const double r_r = env.root_radius_m;
  const double r_t = env.tip_radius_m;
  const double span = r_t - r_r;
  const double dr = span / static_cast<double>(options.n_elements);

  double thrust = 0.0;
  double torque = 0.0;
  double power = 0.0;

  if (options.momentum_only) {
    // Actuator-disc loads per annulus at the pinned induction; C_P
    // integrates exactly to 4a(1-a)^2 on the modeled area.
    const double a = options.fixed_axial_induction;
    for (int e = 0; e < options.n_elements; ++e) {
      double r = r_r + (static_cast<double>(e) + 0.5) * dr;
      double area = 2.0 * kPi * r * dr;
      thrust += 4.0 * a * (1.0 - a) * 0.5 * rho * v * v * area;
      power += 4.0 * a * (1.0 - a) * (1.0 - a) * 0.5 * rho * v * v * v * area;
    }
    return {power, thrust};
  }

  double a = 0.0, at = 0.0;  // warm start carried from the previous element
  for (int e = 0; e < options.n_elements; ++e) {
    const double r = r_r + (static_cast<double>(e) + 0.5) * dr;
    const double frac = (r - r_r) / span;
    const double twist_deg =
        design.root_twist_deg +
        frac * (design.tip_twist_deg - design.root_twist_deg);
    const double chord =
        design.root_chord_m + frac * (design.tip_chord_m - design.root_chord_m);
    const double sigma = b * chord / (2.0 * kPi * r);

    double phi = 0.0, w2 = 0.0, cn = 0.0, ct = 0.0;
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      const double axial = v * (1.0 - a);
      const double tangential = omega * r * (1.0 + at);
      phi = std::atan2(axial, tangential);
      const double sin_phi = std::sin(phi);
      const double cos_phi = std::cos(phi);
      if (!(sin_phi > 1e-9))
        throw Error("bemt-no-convergence", "degenerate inflow angle");

      const double alpha = phi * 180.0 / kPi - twist_deg;
      const PolarTable::Coeffs cf = polar.at(alpha);
      cn = cf.cl * cos_phi + cf.cd * sin_phi;
      ct = cf.cl * sin_phi - cf.cd * cos_phi;

      const double f_tip = 0.5 * b * (r_t - r) / (r * sin_phi);
      const double loss =
          std::max(1e-9, (2.0 / kPi) * std::acos(std::exp(-f_tip)));

      const double ct_thrust =
          sigma * (1.0 - a) * (1.0 - a) * cn / (sin_phi * sin_phi);
      double a_new;
      if (ct_thrust > 0.96 * loss) {
        // Buhl's empirical bridge between momentum theory and the
        // turbulent-wake state.
        a_new = (18.0 * loss - 20.0 -
                 3.0 * std::sqrt(ct_thrust * (50.0 - 36.0 * loss) +
                                 12.0 * loss * (3.0 * loss - 4.0))) /
                (36.0 * loss - 50.0);
      } else {
        a_new = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - ct_thrust / loss)));
      }
      a_new = std::clamp(a_new, -0.5, 0.99);

      const double kt = sigma * ct / (4.0 * loss * sin_phi * cos_phi);
      double at_new = kt < 1.0 ? kt / (1.0 - kt) : 10.0;
      at_new = std::clamp(at_new, -0.5, 10.0);

      const double res = std::max(std::abs(a_new - a), std::abs(at_new - at));
      a += options.relaxation * (a_new - a);
      at += options.relaxation * (at_new - at);
      if (res < options.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error("bemt-no-convergence",
                  "induction iteration did not converge");

    const double axial = v * (1.0 - a);
    const double tangential = omega * r * (1.0 + at);
    w2 = axial * axial + tangential * tangential;
    thrust += 0.5 * rho * w2 * b * chord * cn * dr;
    torque += 0.5 * rho * w2 * b * chord * ct * r * dr;
  }

  power = omega * torque;
  if (!std::isfinite(power) || !std::isfinite(thrust))
    throw Error("bemt-no-convergence", "non-finite rotor loads");
  return {power, thrust};
}

double power_coefficient(const RotorPerformance& perf,
                         const RotorEnvironment& env) {
  double area = kPi * (env.tip_radius_m * env.tip_radius_m -
                       env.root_radius_m * env.root_radius_m);
  double wind_power = 0.5 * env.air_density * area * env.wind_speed *
                      env.wind_speed * env.wind_speed;
  return perf.power_w / wind_power;
}

}  // namespace morop::bemt
