#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's density, CDF, reflector, or KS code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Unnormalized integrand of f(x|p) after x = sin(t): cos(t)^(p-2) on (-pi/2, pi/2).
// The gamma-quotient prefactor is evaluated directly with std::tgamma.
inline double prefactor(int p) {
  return std::tgamma(0.5 * p) / (std::tgamma(0.5) * std::tgamma(0.5 * (p - 1)));
}

// Composite Simpson for int_{-pi/2}^{asin(x)} g(sin t) f(sin t|p) cos t dt.
inline double integrate_density(int p, double upper_x, const std::function<double(double)>& g,
                                int intervals = 20000) {
  const double lo = -std::numbers::pi / 2;
  const double hi = std::asin(std::clamp(upper_x, -1.0, 1.0));
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / intervals;
  auto integrand = [&](double t) {
    const double c = std::cos(t);
    return g(std::sin(t)) * prefactor(p) * std::pow(std::max(c, 0.0), p - 2);
  };
  double sum = integrand(lo) + integrand(hi);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(lo + i * h);
  return sum * h / 3.0;
}

inline double cdf(int p, double x) {
  return integrate_density(p, x, [](double) { return 1.0; });
}

inline double moment(int p, int k) {
  return integrate_density(p, 1.0, [k](double x) { return std::pow(x, k); });
}

// O(n^2) one-sample KS: at every sample point compare F with the empirical
// CDF just before and at the point.
inline double ks_brute(const std::vector<double>& xs, const std::function<double(double)>& f) {
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (double x : xs) {
    std::size_t below = 0, at_or_below = 0;
    for (double y : xs) {
      below += y < x;
      at_or_below += y <= x;
    }
    const double fx = f(x);
    d = std::max({d, std::abs(at_or_below / n - fx), std::abs(below / n - fx)});
  }
  return d;
}

// O((n+m)^2) two-sample KS: empirical CDFs compared at every pooled point.
inline double ks2_brute(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [x](double y) { return y <= x; })) /
           static_cast<double>(v.size());
  };
  double d = 0.0;
  for (const auto* v : {&a, &b})
    for (double x : *v) d = std::max(d, std::abs(ecdf(a, x) - ecdf(b, x)));
  return d;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace oracle
