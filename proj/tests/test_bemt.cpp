#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "morop/bemt.hpp"
#include "morop/errors.hpp"

using namespace morop;
using namespace morop::bemt;

namespace {

const std::string kPolarPath = std::string(MOROP_SOURCE_DIR) + "/data/s809.csv";

const PolarTable& s809() {
  static PolarTable table = load_polar(kPolarPath);
  return table;
}

BladeDesign initial_design() {
  return BladeDesign::from_dvs(22.8, 3.61, 0.737, 72.0);
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("polar interpolation is linear between rows") {
  PolarTable t({-10.0, 25.0}, {-0.8, 1.2}, {0.01, 0.2});
  CHECK(t.cl(-10.0) == -0.8);
  CHECK(t.cl(25.0) == 1.2);
  CHECK(t.cl(7.5) == doctest::Approx(0.2).epsilon(1e-12));  // midpoint
  CHECK(t.cd(7.5) == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(t.alpha_min() == -10.0);
  CHECK(t.alpha_max() == 25.0);

  CHECK_THROWS_AS(t.at(-10.0001), Error);
  CHECK_THROWS_AS(t.at(25.0001), Error);
  try {
    t.at(90.0);
  } catch (const Error& err) {
    CHECK(err.code() == "polar-out-of-range");
  }
}

TEST_CASE("polar table construction rejects bad data") {
  CHECK_THROWS_AS(PolarTable({0.0}, {0.1}, {0.01}), Error);
  CHECK_THROWS_AS(PolarTable({-10.0, -10.0, 25.0}, {0.0, 0.1, 0.2},
                             {0.01, 0.01, 0.01}),
                  Error);
  CHECK_THROWS_AS(PolarTable({-10.0, 25.0}, {0.0, 0.1}, {-0.01, 0.01}), Error);
  // must cover [-10, 25]
  CHECK_THROWS_AS(PolarTable({-5.0, 25.0}, {0.0, 0.1}, {0.01, 0.01}), Error);
  CHECK_THROWS_AS(PolarTable({-10.0, 20.0}, {0.0, 0.1}, {0.01, 0.01}), Error);
}

TEST_CASE("the bundled S809 polar loads and looks like an airfoil") {
  const PolarTable& t = s809();
  CHECK(t.size() > 50);
  CHECK(t.alpha_min() <= -170.0);
  CHECK(t.alpha_max() >= 170.0);
  CHECK(t.cl(5.0) > t.cl(0.0));      // positive lift slope
  CHECK(t.cl(0.0) > 0.0);            // cambered section
  CHECK(t.cd(0.0) > 0.0);
  CHECK(t.cd(0.0) < 0.02);
  CHECK(t.cd(20.0) > t.cd(5.0));     // post-stall drag rise
}

TEST_CASE("polar file parsing") {
  auto ok = write_temp("morop_polar_ok.csv",
                       "# comment\n"
                       "alpha_deg, cl, cd\n"
                       "-15, -0.5, 0.02\n"
                       "0, 0.1, 0.01  # trailing comment\n"
                       "30, 1.0, 0.2\n");
  auto t = load_polar(ok.string());
  CHECK(t.size() == 3);
  CHECK(t.cl(0.0) == doctest::Approx(0.1));
  std::filesystem::remove(ok);

  auto bad_header = write_temp("morop_polar_h.csv", "a,b,c\n0,0,0\n30,1,0\n");
  CHECK_THROWS_AS(load_polar(bad_header.string()), Error);
  std::filesystem::remove(bad_header);

  auto bad_row = write_temp("morop_polar_r.csv",
                            "alpha_deg,cl,cd\n-15,-0.5,0.02\nnope,1,0.2\n");
  CHECK_THROWS_AS(load_polar(bad_row.string()), Error);
  std::filesystem::remove(bad_row);

  CHECK_THROWS_AS(load_polar("/nonexistent/polar.csv"), Error);
}

TEST_CASE("momentum-only mode hits the actuator-disc identities") {
  RotorEnvironment env;
  BemtOptions opt;
  opt.momentum_only = true;

  RotorPerformance perf = bemt_evaluate(initial_design(), env, s809(), opt);
  // Betz limit: a = 1/3 gives C_P = 16/27 on the modeled annulus
  CHECK(std::abs(power_coefficient(perf, env) - 16.0 / 27.0) < 1e-9);
  // and C_T = 4a(1-a) = 8/9
  const double area_power = 0.5 * env.air_density *
                            3.14159265358979323846 *
                            (env.tip_radius_m * env.tip_radius_m -
                             env.root_radius_m * env.root_radius_m);
  const double ct = perf.thrust_n /
                    (area_power * env.wind_speed * env.wind_speed);
  CHECK(std::abs(ct - 8.0 / 9.0) < 1e-9);

  opt.fixed_axial_induction = 0.25;
  perf = bemt_evaluate(initial_design(), env, s809(), opt);
  CHECK(std::abs(power_coefficient(perf, env) - 4.0 * 0.25 * 0.75 * 0.75) <
        1e-9);
}

TEST_CASE("no wind, no loads") {
  RotorEnvironment env;
  env.wind_speed = 0.0;
  auto perf = bemt_evaluate(initial_design(), env, s809());
  CHECK(perf.power_w == 0.0);
  CHECK(perf.thrust_n == 0.0);
}

TEST_CASE("loads scale linearly with air density") {
  RotorEnvironment env;
  auto base = bemt_evaluate(initial_design(), env, s809());
  REQUIRE(base.power_w > 0.0);

  env.air_density = 2.5;
  auto doubled = bemt_evaluate(initial_design(), env, s809());
  CHECK(std::abs(doubled.power_w / base.power_w - 2.0) < 1e-9);
  CHECK(std::abs(doubled.thrust_n / base.thrust_n - 2.0) < 1e-9);
}

TEST_CASE("mesh refinement moves the answer by less than a percent") {
  RotorEnvironment env;
  BemtOptions coarse, fine;
  coarse.n_elements = 40;
  fine.n_elements = 80;
  auto p40 = bemt_evaluate(initial_design(), env, s809(), coarse);
  auto p80 = bemt_evaluate(initial_design(), env, s809(), fine);
  CHECK(std::abs(p40.power_w - p80.power_w) / std::abs(p80.power_w) < 0.01);
  CHECK(std::abs(p40.thrust_n - p80.thrust_n) / std::abs(p80.thrust_n) < 0.01);
}

TEST_CASE("initial design lands near the published performance") {
  RotorEnvironment env;  // DEP nominal table
  auto perf = bemt_evaluate(initial_design(), env, s809());
  const double p_kw = perf.power_w / 1000.0;
  const double fa_kn = perf.thrust_n / 1000.0;
  CHECK(p_kw > 11.5 * 0.8);
  CHECK(p_kw < 11.5 * 1.2);
  CHECK(fa_kn > 1.455 * 0.8);
  CHECK(fa_kn < 1.455 * 1.2);
}

TEST_CASE("no converged design beats the Betz limit") {
  RotorEnvironment env;
  for (double v : {6.0, 8.0, 10.0, 12.0, 14.0}) {
    env.wind_speed = v;
    auto perf = bemt_evaluate(initial_design(), env, s809());
    CHECK(power_coefficient(perf, env) < 0.593 + 0.02);
  }
  for (double rpm : {50.0, 72.0, 95.0}) {
    env.wind_speed = 10.0;
    auto perf =
        bemt_evaluate(BladeDesign::from_dvs(15.0, 0.0, 0.6, rpm), env, s809());
    CHECK(power_coefficient(perf, env) < 0.593 + 0.02);
  }
}

TEST_CASE("bemt is deterministic down to the bit") {
  RotorEnvironment env;
  auto a = bemt_evaluate(initial_design(), env, s809());
  auto b = bemt_evaluate(initial_design(), env, s809());
  CHECK(a.power_w == b.power_w);
  CHECK(a.thrust_n == b.thrust_n);
}

TEST_CASE("environment validation") {
  RotorEnvironment env;
  CHECK_NOTHROW(env.validate());
  env.root_radius_m = 6.0;  // exceeds the tip radius
  CHECK_THROWS_AS(env.validate(), Error);
  env = {};
  env.air_density = 0.0;
  CHECK_THROWS_AS(env.validate(), Error);
  env = {};
  env.blade_count = 0;
  CHECK_THROWS_AS(env.validate(), Error);
  env = {};
  env.wind_speed = -1.0;
  CHECK_THROWS_AS(env.validate(), Error);

  BemtOptions opt;
  opt.n_elements = 0;
  env = {};
  CHECK_THROWS_AS(bemt_evaluate(initial_design(), env, s809(), opt), Error);
}

TEST_CASE("tip chord is tied to the root chord") {
  auto d = BladeDesign::from_dvs(10.0, 2.0, 0.737, 60.0);
  CHECK(d.tip_chord_m == doctest::Approx(1.095 - 0.737).epsilon(1e-15));
  CHECK(d.root_chord_m + d.tip_chord_m == BladeDesign::kTotalChordM);
}
