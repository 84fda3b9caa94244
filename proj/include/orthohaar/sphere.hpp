#pragma once

#include "orthohaar/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orthohaar {

/// A vector in R^n with unit Euclidean norm (to within kNormTolerance).
class UnitVector {
 public:
  static constexpr double kNormTolerance = 1e-14;

  /// Throws std::domain_error if the input is empty or not unit length.
  explicit UnitVector(std::vector<double> v);

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const { return v_; }

 private:
  std::vector<double> v_;
};

/// Uniform point on the unit sphere in R^n: n normals from `rng`, normalized.
/// A draw whose norm falls below 1e-100 is discarded and redrawn.
UnitVector sample_uniform_sphere(std::size_t n, RngStream& rng);

/// (1, 0, ..., 0) in R^n.
UnitVector basis_vector_e1(std::size_t n);

double euclidean_norm(std::span<const double> v);

}  // namespace orthohaar
