#include "orthohaar/marginal.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orthohaar {

MarginalLaw::MarginalLaw(int p) : p_(p) {
  if (p < 2) throw std::domain_error("MarginalLaw: p must be >= 2, got " + std::to_string(p));
  const double a = beta_shape();
  log_norm_ = std::lgamma(0.5 * p) - std::lgamma(0.5) - std::lgamma(a);
}

double MarginalLaw::pdf(double x) const {
  const double ax = std::abs(x);
  if (ax >= 1.0) {
    if (p_ == 2 && ax == 1.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  if (p_ == 3) return 0.5;
  // 1 - x^2 = (1 - x)(1 + x) keeps precision near the endpoints.
  const double one_minus_x2 = (1.0 - ax) * (1.0 + ax);
  return std::exp(log_norm_ + 0.5 * (p_ - 3) * std::log(one_minus_x2));
}

double MarginalLaw::cdf(double x) const {
  if (!(x > -1.0)) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = beta_shape();
  // Evaluate the smaller tail directly for accuracy.
  if (x <= 0.0) return boost::math::ibeta(a, a, 0.5 * (1.0 + x));
  return boost::math::ibetac(a, a, 0.5 * (1.0 - x));
}

double MarginalLaw::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("MarginalLaw::quantile: u must lie in (0,1), got " + std::to_string(u));
  // Closed forms are clamped inside (-1,1) for tails below double resolution.
  const double inner = std::nextafter(1.0, 0.0);
  if (p_ == 2) return std::clamp(std::sin(std::numbers::pi * (u - 0.5)), -inner, inner);
  if (p_ == 3) return std::clamp(2.0 * u - 1.0, -inner, inner);
  if (u == 0.5) return 0.0;

  constexpr double kLo = -1.0 + 1e-15;
  constexpr double kTolX = 1e-13;
  // Solve on the lower tail and reflect: F(-x) = 1 - F(x).
  const double target = u < 0.5 ? u : 1.0 - u;
  if (target <= cdf(kLo)) return u < 0.5 ? kLo : -kLo;
  auto f = [&](double x) { return cdf(x) - target; };
  auto tol = [](double a, double b) { return std::abs(b - a) <= kTolX; };
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] =
      boost::math::tools::toms748_solve(f, kLo, 0.0, f(kLo), f(0.0), tol, max_iter);
  const double x = 0.5 * (lo + hi);
  return u < 0.5 ? x : -x;
}

Gamma11Draw MarginalLaw::draw(RngStream& rng) const {
  const double a = beta_shape();
  const double g1 = sample_gamma(a, rng);
  const double g2 = sample_gamma(a, rng);
  const double total = g1 + g2;
  return {(g1 - g2) / total, 2.0 * std::sqrt(g1) * std::sqrt(g2) / total};
}

double sample_gamma(double shape, RngStream& rng) {
  if (!(shape > 0.0)) throw std::domain_error("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.next_open_uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.next_normal();
    const double u = rng.next_open_uniform();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace orthohaar
