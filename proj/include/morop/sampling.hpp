#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "morop/core.hpp"

namespace morop {

/// Row-major n_samples x d matrix of stratified uniforms in (0, 1): per
/// column, exactly one entry falls in each stratum [k/n, (k+1)/n).
class UnitSampleMatrix {
 public:
  UnitSampleMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

/// Latin Hypercube Sample: column permutations are drawn independently and
/// the whole matrix is a pure function of (n_samples, d, seed).
UnitSampleMatrix lhs(std::size_t n_samples, std::size_t d, std::uint64_t seed);

/// Inverse standard normal CDF. Rational initial guess refined by one Halley
/// step; |error| < 1e-9 over u in [1e-12, 1 - 1e-12].
double inverse_normal_cdf(double u);

/// Perturbs nominal values with one row of stratified uniforms:
///   uniform(w): nominal + (2u - 1) * w
///   normal(s):  nominal + s * inverse_normal_cdf(u)
///   none:       unchanged (the u entry is ignored)
/// Throws Error("config-error") on length mismatch or u outside [0, 1).
std::vector<double> apply_noise(std::span<const double> nominal,
                                std::span<const NoiseSpec> specs,
                                std::span<const double> u);

}  // namespace morop
