#pragma once

#include "orthohaar/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orthohaar {

/// Symmetric orthogonal reflector h = I - 2 w w^T / (w^T w), or the identity.
/// Stored in vector form; `dense()` materializes it.
class HouseholderReflector {
 public:
  /// Relative tolerance on ||u|| = ||v|| accepted by the constructors.
  static constexpr double kNormTolerance = 1e-10;
  /// ||u - v|| <= kCoincidence * ||u|| selects the identity branch.
  static constexpr double kCoincidence = 1e-12;

  static HouseholderReflector identity(std::size_t n);
  /// Throws std::domain_error if w is zero.
  static HouseholderReflector from_vector(std::vector<double> w);

  std::size_t size() const { return n_; }
  bool is_identity() const { return w_.empty(); }
  std::span<const double> w() const { return w_; }

  /// x - 2 (w.x / w.w) w, in place.
  void apply_in_place(std::span<double> x) const;
  /// m <- h m, i.e. the reflector applied to every column.
  void apply_left(Matrix& m) const;
  /// m <- m h (h is symmetric, so this is h applied to every row).
  void apply_right(Matrix& m) const;
  Matrix dense() const;

 private:
  HouseholderReflector(std::size_t n, std::vector<double> w);

  std::size_t n_;
  std::vector<double> w_;
  double scale_ = 0.0;  // 2 / (w.w)
};

/// The reflector with w = u - v, which swaps u and v. Throws std::domain_error
/// if the lengths differ, ||u|| = 0, or the norms differ beyond tolerance.
HouseholderReflector reflector_between(std::span<const double> u, std::span<const double> v);

/// reflector_between(sqrt(1 - gamma^2) e1, target). Throws std::domain_error if
/// |gamma| >= 1 or ||target|| != sqrt(1 - gamma^2).
HouseholderReflector reflector_to_scaled_e1(std::span<const double> target, double gamma);

/// reflector_between(scale * e1, target) with scale > 0 supplied directly.
/// w_1 = scale - target_1 is formed without cancellation when target_1 > 0.
HouseholderReflector reflector_from_scaled_e1(std::span<const double> target, double scale);

std::vector<double> apply_reflector(const HouseholderReflector& h, std::span<const double> x);

}  // namespace orthohaar
