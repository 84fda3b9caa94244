#include "orthohaar/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace orthohaar {

double euclidean_norm(std::span<const double> v) {
  // Scaled accumulation so huge or tiny entries neither overflow nor underflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

UnitVector::UnitVector(std::vector<double> v) : v_(std::move(v)) {
  if (v_.empty()) throw std::domain_error("UnitVector: empty vector");
  const double norm = euclidean_norm(v_);
  if (!(std::abs(norm - 1.0) <= kNormTolerance))
    throw std::domain_error("UnitVector: norm differs from 1");
}

UnitVector sample_uniform_sphere(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_uniform_sphere: n must be >= 1");
  std::vector<double> v(n);
  for (;;) {
    for (auto& x : v) x = rng.next_normal();
    const double norm = euclidean_norm(v);
    if (norm < 1e-100) continue;
    for (auto& x : v) x /= norm;
    return UnitVector(std::move(v));
  }
}

UnitVector basis_vector_e1(std::size_t n) {
  if (n == 0) throw std::invalid_argument("basis_vector_e1: n must be >= 1");
  std::vector<double> v(n, 0.0);
  v[0] = 1.0;
  return UnitVector(std::move(v));
}

}  // namespace orthohaar
