#include "morop/sampling.hpp"

#include <cmath>
#include <numeric>

#include "morop/rng.hpp"

namespace morop {

UnitSampleMatrix lhs(std::size_t n_samples, std::size_t d,
                     std::uint64_t seed) {
  if (n_samples == 0 || d == 0)
    throw Error("config-error", "lhs needs n_samples >= 1 and d >= 1");
  UnitSampleMatrix m(n_samples, d);
  Rng rng(seed);
  std::vector<std::size_t> perm(n_samples);
  for (std::size_t c = 0; c < d; ++c) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n_samples - 1; i > 0; --i) {
      std::size_t j = rng.below(i + 1);
      std::swap(perm[i], perm[j]);
    }
    for (std::size_t i = 0; i < n_samples; ++i)
      m(i, c) = (static_cast<double>(perm[i]) + rng.uniform01()) /
                static_cast<double>(n_samples);
  }
  return m;
}

// Acklam's rational approximation refined by one Halley step; the
// refinement uses erfc so the result is accurate to ~1e-15 well past the
// contractual 1e-9.
double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw Error("config-error", "inverse_normal_cdf requires u in (0, 1)");

  // Work on the lower half only: there the erfc-based residual is a small
  // number with full relative precision, while near u = 1 it would cancel
  // against 1 and the tail refinement would amplify the rounding noise by
  // exp(x^2/2). The reflection is lossless because 1 - u is exact for
  // u >= 1/2.
  if (u > 0.5) return -inverse_normal_cdf(1.0 - u);

  static constexpr double a[6] = {-3.969683028665376e+01,
                                  2.209460984245205e+02,
                                  -2.759285104469687e+02,
                                  1.383577518672690e+02,
                                  -3.066479806614716e+01,
                                  2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01,
                                  1.615858368580409e+02,
                                  -1.556989798598866e+02,
                                  6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03,
                                  -3.223964580411365e-01,
                                  -2.400758277161838e+00,
                                  -2.549732539343734e+00,
                                  4.374664141464968e+00,
                                  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03,
                                  3.224671290700398e-01,
                                  2.445134137142996e+00,
                                  3.754408661907416e+00};
  static constexpr double p_low = 0.02425;

  double x;
  if (u < p_low) {
    double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    double q = u - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  static const double sqrt_2pi = std::sqrt(2.0 * std::acos(-1.0));
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - u;
  double w = e * sqrt_2pi * std::exp(0.5 * x * x);
  return x - w / (1.0 + 0.5 * x * w);
}

std::vector<double> apply_noise(std::span<const double> nominal,
                                std::span<const NoiseSpec> specs,
                                std::span<const double> u) {
  if (nominal.size() != specs.size() || nominal.size() != u.size())
    throw Error("config-error", "apply_noise length mismatch");
  std::vector<double> out(nominal.begin(), nominal.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (specs[i].kind) {
      case NoiseSpec::Kind::None:
        break;
      case NoiseSpec::Kind::Uniform:
        if (!(u[i] >= 0.0 && u[i] < 1.0))
          throw Error("config-error", "sample entry outside [0, 1)");
        out[i] += (2.0 * u[i] - 1.0) * specs[i].param;
        break;
      case NoiseSpec::Kind::Normal:
        if (!(u[i] >= 0.0 && u[i] < 1.0))
          throw Error("config-error", "sample entry outside [0, 1)");
        out[i] += specs[i].param * inverse_normal_cdf(u[i]);
        break;
    }
  }
  return out;
}

}  // namespace morop
