#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "morop/errors.hpp"
#include "morop/sampling.hpp"

using namespace morop;

namespace {

// Kolmogorov-Smirnov distance between a sample and a uniform law on [lo, hi].
double ks_distance_uniform(std::vector<double> sample, double lo, double hi) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = std::clamp((sample[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max(d, std::abs((i + 1) / n - cdf));
    d = std::max(d, std::abs(i / n - cdf));
  }
  return d;
}

}  // namespace

TEST_CASE("lhs stratification is exact per column") {
  const std::size_t cases[][2] = {{1, 3}, {4, 2}, {10, 5}, {97, 3}, {1000, 4}};
  for (auto [n, d] : cases) {
    auto m = lhs(n, d, 12345);
    REQUIRE(m.rows() == n);
    REQUIRE(m.cols() == d);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<int> strata(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = m(i, c);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        ++strata[static_cast<std::size_t>(u * static_cast<double>(n))];
      }
      // exactly one point per stratum [k/n, (k+1)/n)
      CHECK(std::all_of(strata.begin(), strata.end(),
                        [](int k) { return k == 1; }));
    }
  }
}

TEST_CASE("lhs is a pure function of its arguments") {
  auto a = lhs(50, 3, 77);
  auto b = lhs(50, 3, 77);
  CHECK(std::memcmp(a.data().data(), b.data().data(),
                    a.data().size() * sizeof(double)) == 0);
  auto c = lhs(50, 3, 78);
  CHECK(std::memcmp(a.data().data(), c.data().data(),
                    a.data().size() * sizeof(double)) != 0);
  CHECK_THROWS_AS(lhs(0, 3, 1), Error);
  CHECK_THROWS_AS(lhs(3, 0, 1), Error);
}

TEST_CASE("lhs columns look uniform") {
  auto m = lhs(1000, 4, 4242);
  for (std::size_t c = 0; c < 4; ++c) {
    double mean = 0.0;
    std::vector<double> col(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      col[i] = m(i, c);
      mean += col[i];
    }
    mean /= static_cast<double>(m.rows());
    double var = 0.0;
    for (double v : col) var += (v - mean) * (v - mean);
    var /= static_cast<double>(m.rows() - 1);

    CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.10));
    CHECK(ks_distance_uniform(col, 0.0, 1.0) < 0.01);
  }
}

TEST_CASE("inverse normal cdf against reference values") {
  // Reference quantiles to 21 significant digits.
  const struct {
    double u, x;
  } table[] = {
      {1e-12, -7.03448382530113192981},
      {1e-9, -5.99780701500768687156},
      {1e-6, -4.75342430882289894819},
      {0.001, -3.09023230616781354154},
      {0.025, -1.95996398454005423552},
      {0.1, -1.28155156554460046697},
      {0.25, -0.674489750196081743202},
      {0.5, 0.0},
      {0.6, 0.253347103135799798798},
      {0.975, 1.95996398454005423552},
      {0.999, 3.09023230616781354154},
  };
  for (const auto& row : table) {
    CHECK(std::abs(inverse_normal_cdf(row.u) - row.x) < 1e-9);
    // Symmetry through the complement. Forming 1 - u already rounds to
    // about 1e-16 absolute, and the quantile derivative 1/phi(x) scales
    // that up, so only moderate u admit a tight bound.
    if (row.u >= 1e-3)
      CHECK(std::abs(inverse_normal_cdf(row.u) +
                     inverse_normal_cdf(1.0 - row.u)) < 1e-12);
  }
  CHECK(inverse_normal_cdf(0.5) == 0.0);
}

TEST_CASE("inverse normal cdf is monotone and inverts erfc") {
  double prev = -1e300;
  for (double u = 1e-12; u < 1.0 - 1e-12; u += 0.0007) {
    const double x = inverse_normal_cdf(u);
    CHECK(x > prev);
    prev = x;
    const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(std::abs(back - u) < 1e-11);
  }
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(-0.5), Error);
}

TEST_CASE("apply_noise transforms one stratified row") {
  const std::vector<double> nominal = {72.0, 10.0, 0.737};
  const std::vector<NoiseSpec> specs = {
      NoiseSpec::uniform(2.0), NoiseSpec::normal(2.0), NoiseSpec::none()};

  auto mid = apply_noise(nominal, specs, std::vector<double>{0.5, 0.5, 0.123});
  CHECK(mid[0] == 72.0);  // (2u - 1) w vanishes at u = 1/2
  CHECK(mid[1] == 10.0);  // the median of the normal is its mean
  CHECK(mid[2] == 0.737);

  auto up = apply_noise(nominal, specs, std::vector<double>{0.75, 0.975, 0.9});
  CHECK(up[0] == doctest::Approx(73.0).epsilon(1e-15));
  CHECK(up[1] == doctest::Approx(10.0 + 2.0 * 1.959963984540054).epsilon(1e-9));
  CHECK(up[2] == 0.737);

  // uniform noise stays inside the +-w band
  const std::vector<double> chord = {0.737};
  const std::vector<NoiseSpec> chord_spec = {NoiseSpec::uniform(0.005)};
  for (double u : {1e-9, 0.2, 0.8, 1.0 - 1e-12}) {
    auto v = apply_noise(chord, chord_spec, std::vector<double>{u});
    CHECK(v[0] > 0.732);
    CHECK(v[0] < 0.742);
  }
}

TEST_CASE("apply_noise rejects malformed input") {
  const std::vector<double> nominal = {1.0, 2.0};
  const std::vector<NoiseSpec> specs = {NoiseSpec::uniform(1.0),
                                        NoiseSpec::none()};
  CHECK_THROWS_AS(
      apply_noise(nominal, specs, std::vector<double>{0.5}), Error);
  CHECK_THROWS_AS(
      apply_noise(std::vector<double>{1.0}, specs,
                  std::vector<double>{0.5, 0.5}),
      Error);
  CHECK_THROWS_AS(
      apply_noise(nominal, specs, std::vector<double>{1.0, 0.5}), Error);
  CHECK_THROWS_AS(
      apply_noise(nominal, specs, std::vector<double>{-0.1, 0.5}), Error);
}

TEST_CASE("noised design samples follow the expected uniform law") {
  // DV noise of the one-variable example: x = 4 with half-width 0.1.
  const std::size_t n = 1000;
  auto m = lhs(n, 1, 9001);
  const std::vector<double> nominal = {4.0};
  const std::vector<NoiseSpec> specs = {NoiseSpec::uniform(0.1)};
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = apply_noise(nominal, specs, m.row(i))[0];
  CHECK(ks_distance_uniform(xs, 3.9, 4.1) < 0.01);
}
