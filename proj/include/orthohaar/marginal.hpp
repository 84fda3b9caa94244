#pragma once

#include "orthohaar/rng.hpp"

namespace orthohaar {

/// A draw of the (1,1) entry together with sqrt(1 - value^2), computed without
/// cancellation so the complement stays positive even when |value| rounds to 1.
struct Gamma11Draw {
  double value;
  double complement;
};

/// Law of the (1,1) entry of a Haar matrix on O_p:
///   f(x|p) = G(p/2) / (G(1/2) G((p-1)/2)) (1 - x^2)^((p-3)/2),  |x| < 1.
/// Equivalently (X + 1)/2 ~ Beta((p-1)/2, (p-1)/2). It is also the law of one
/// coordinate of a uniform point on the unit sphere in R^p.
class MarginalLaw {
 public:
  explicit MarginalLaw(int p);

  int p() const { return p_; }
  /// Shape of the equivalent symmetric beta law.
  double beta_shape() const { return 0.5 * (p_ - 1); }

  /// Density on the open support (-1,1). At |x| >= 1 returns 0, except p = 2
  /// where the arcsine density is +infinity at |x| = 1.
  double pdf(double x) const;
  /// Clamps outside [-1,1].
  double cdf(double x) const;
  /// Throws std::domain_error unless 0 < u < 1.
  double quantile(double u) const;

  /// 2B - 1 with B = G1 / (G1 + G2), G1, G2 iid Gamma(beta_shape()).
  Gamma11Draw draw(RngStream& rng) const;
  double sample(RngStream& rng) const { return draw(rng).value; }

 private:
  int p_;
  double log_norm_;
};

/// Gamma(shape, 1) deviate. Marsaglia-Tsang squeeze for shape >= 1, boosted
/// by U^(1/shape) below 1. Each Marsaglia-Tsang attempt consumes one normal
/// and one uniform; the boost adds one uniform.
double sample_gamma(double shape, RngStream& rng);

}  // namespace orthohaar
